#include "tcc/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tcc/rng.hpp"

namespace tcc {

ChannelModel ChannelModel::bsc(double p) {
  if (!(p >= 0.0 && p <= 0.5)) throw std::invalid_argument("bsc: p must be in [0, 0.5]");
  return {ChannelKind::bsc, p};
}

ChannelModel ChannelModel::bec(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bec: p must be in [0, 1]");
  return {ChannelKind::bec, p};
}

ChannelModel ChannelModel::awgn(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("awgn: sigma must be > 0");
  return {ChannelKind::awgn, sigma};
}

ChannelModel ChannelModel::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("channel spec '" + spec + "': expected kind:param");
  const std::string kind = spec.substr(0, colon);
  double param = 0;
  try {
    std::size_t pos = 0;
    param = std::stod(spec.substr(colon + 1), &pos);
    if (pos != spec.size() - colon - 1) throw std::invalid_argument(spec);
  } catch (const std::exception&) {
    throw std::invalid_argument("channel spec '" + spec + "': bad parameter");
  }
  if (kind == "bsc") return bsc(param);
  if (kind == "bec") return bec(param);
  if (kind == "awgn") return awgn(param);
  throw std::invalid_argument("channel spec '" + spec + "': unknown kind");
}

std::string ChannelModel::spec() const {
  const char* name = kind_ == ChannelKind::bsc ? "bsc" : kind_ == ChannelKind::bec ? "bec" : "awgn";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s:%g", name, param_);
  return buf;
}

double ChannelModel::lambda() const {
  switch (kind_) {
    case ChannelKind::bsc:
      if (!(param_ > 0.0 && param_ < 1.0))
        throw std::invalid_argument("bsc lambda: p must be in (0, 1)");
      return 0.5 * std::log((1.0 - param_) / param_);
    case ChannelKind::bec:
      return std::numeric_limits<double>::infinity();
    case ChannelKind::awgn:
      return 1.0 / (param_ * param_);
  }
  throw std::logic_error("unreachable");
}

double ChannelModel::llr(double r) const {
  switch (kind_) {
    case ChannelKind::bsc:
      if (r != -1.0 && r != 1.0) throw std::invalid_argument("bsc llr: r must be -1 or +1");
      return lambda() * r;
    case ChannelKind::bec:
      if (r != -1.0 && r != 0.0 && r != 1.0)
        throw std::invalid_argument("bec llr: r must be -1, 0 or +1");
      if (r == 0.0) return 0.0;
      return r * std::numeric_limits<double>::infinity();
    case ChannelKind::awgn:
      if (!std::isfinite(r)) throw std::invalid_argument("awgn llr: r must be finite");
      return lambda() * r;
  }
  throw std::logic_error("unreachable");
}

ReceivedWord ChannelModel::transmit(const BinaryWord& c, std::uint64_t seed) const {
  Rng rng(seed);
  ReceivedWord r(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    const double s = static_cast<double>(c[j]);
    switch (kind_) {
      case ChannelKind::bsc:
        r[j] = rng.uniform() < param_ ? -s : s;
        break;
      case ChannelKind::bec:
        r[j] = rng.uniform() < param_ ? 0.0 : s;
        break;
      case ChannelKind::awgn:
        r[j] = s + param_ * rng.gaussian();
        break;
    }
  }
  return r;
}

void ChannelModel::check_received(const ReceivedWord& r) const {
  for (double v : r) {
    switch (kind_) {
      case ChannelKind::bsc:
        if (v != -1.0 && v != 1.0) throw std::invalid_argument("received word: bsc values must be -1/+1");
        break;
      case ChannelKind::bec:
        if (v != -1.0 && v != 0.0 && v != 1.0)
          throw std::invalid_argument("received word: bec values must be -1/0/+1");
        break;
      case ChannelKind::awgn:
        if (!std::isfinite(v)) throw std::invalid_argument("received word: awgn values must be finite");
        break;
    }
  }
}

}  // namespace tcc
