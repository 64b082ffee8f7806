#ifndef TCC_BP_DECODER_HPP
#define TCC_BP_DECODER_HPP

#include "tcc/amp_decoder.hpp"
#include "tcc/channel.hpp"
#include "tcc/trellis.hpp"
#include "tcc/word.hpp"

namespace tcc {

struct BpConfig {
  int max_iter = 50;
  double damping = 0.0;  // in [0,1), fraction of the previous extrinsic kept
};

/// Turbo-style loopy belief propagation over the two constituent trellises:
/// each half-iteration marginalizes one trellis under channel-plus-extrinsic
/// symbol weights and passes on the posterior minus its own input, so a
/// constituent never echoes back what it was just told. Hard decision and
/// membership test after every full iteration; result shape and success
/// semantics match the amplification decoder.
DecodeResult bp_decode(const IntersectionCode& code, const ChannelModel& channel, const ReceivedWord& r,
                       const BpConfig& config = {});

}  // namespace tcc

#endif
