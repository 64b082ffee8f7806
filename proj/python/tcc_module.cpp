#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "tcc/amp_decoder.hpp"
#include "tcc/bp_decoder.hpp"
#include "tcc/oracle.hpp"
#include "tcc/simulate.hpp"

namespace py = pybind11;

namespace {

tcc::BinaryWord to_word(const std::vector<int>& symbols) {
  std::vector<tcc::Symbol> s(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) s[i] = static_cast<tcc::Symbol>(symbols[i]);
  return tcc::BinaryWord(std::move(s));
}

std::vector<int> from_word(const tcc::BinaryWord& w) {
  std::vector<int> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i];
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "decoders for trellis-constrained (intersection) codes";

  py::class_<tcc::Trellis>(m, "Trellis")
      .def_readonly("n", &tcc::Trellis::n)
      .def("num_edges", &tcc::Trellis::num_edges)
      .def("__repr__", [](const tcc::Trellis& t) {
        std::ostringstream s;
        s << "Trellis(n=" << t.n << ", edges=" << t.num_edges() << ")";
        return s.str();
      });

  py::class_<tcc::IntersectionCode>(m, "IntersectionCode")
      .def_readonly("n", &tcc::IntersectionCode::n)
      .def_readonly("trellis1", &tcc::IntersectionCode::trellis1)
      .def_readonly("trellis2", &tcc::IntersectionCode::trellis2);

  py::class_<tcc::ChannelModel>(m, "ChannelModel")
      .def_static("parse", &tcc::ChannelModel::parse, py::arg("spec"))
      .def_property_readonly("spec", &tcc::ChannelModel::spec)
      .def("lambda_", &tcc::ChannelModel::lambda)
      .def("llr", &tcc::ChannelModel::llr, py::arg("r"))
      .def("transmit",
           [](const tcc::ChannelModel& ch, const std::vector<int>& word, std::uint64_t seed) {
             return ch.transmit(to_word(word), seed);
           },
           py::arg("codeword"), py::arg("seed"));

  py::class_<tcc::DecoderConfig>(m, "DecoderConfig")
      .def(py::init<>())
      .def_readwrite("kappa", &tcc::DecoderConfig::kappa)
      .def_readwrite("delta_max", &tcc::DecoderConfig::delta_max)
      .def_readwrite("rho_grid", &tcc::DecoderConfig::rho_grid)
      .def_readwrite("max_iter", &tcc::DecoderConfig::max_iter)
      .def_readwrite("backtrack_limit", &tcc::DecoderConfig::backtrack_limit);

  py::class_<tcc::BpConfig>(m, "BpConfig")
      .def(py::init<>())
      .def_readwrite("max_iter", &tcc::BpConfig::max_iter)
      .def_readwrite("damping", &tcc::BpConfig::damping);

  py::class_<tcc::TraceRow>(m, "TraceRow")
      .def_readonly("iteration", &tcc::TraceRow::iteration)
      .def_readonly("step_kind", &tcc::TraceRow::step_kind)
      .def_readonly("log_xi", &tcc::TraceRow::log_xi)
      .def_readonly("log_p_est", &tcc::TraceRow::log_p_est)
      .def_readonly("objective", &tcc::TraceRow::objective)
      .def_readonly("accepted_factor", &tcc::TraceRow::accepted_factor);

  py::class_<tcc::DecodeResult>(m, "DecodeResult")
      .def_property_readonly("status", [](const tcc::DecodeResult& r) { return std::string(to_string(r.status)); })
      .def_property_readonly("c_hat", [](const tcc::DecodeResult& r) { return from_word(r.c_hat); })
      .def_readonly("iterations", &tcc::DecodeResult::iterations)
      .def_readonly("trace", &tcc::DecodeResult::trace)
      .def_readonly("soft", &tcc::DecodeResult::soft);

  m.def("build_conv_trellis", &tcc::build_conv_trellis, py::arg("generators"), py::arg("memory"),
        py::arg("info_len"), py::arg("terminated") = true);
  m.def("build_check_trellis", &tcc::build_check_trellis, py::arg("check_rows"));
  m.def("build_free_trellis", &tcc::build_free_trellis, py::arg("n"));
  m.def("make_intersection",
        [](const tcc::Trellis& t1, const tcc::Trellis& t2) { return tcc::make_intersection(t1, t2); },
        py::arg("trellis1"), py::arg("trellis2"));
  m.def("make_intersection",
        [](const tcc::Trellis& t1, const tcc::Trellis& t2, const std::vector<int>& perm) {
          return tcc::make_intersection(t1, t2, perm);
        },
        py::arg("trellis1"), py::arg("trellis2"), py::arg("perm"));
  m.def("load_code", &tcc::load_code_file, py::arg("path"));
  m.def("parse_code", &tcc::parse_code_text, py::arg("text"));
  m.def("channel", &tcc::ChannelModel::parse, py::arg("spec"));

  m.def("contains",
        [](const tcc::Trellis& t, const std::vector<int>& word) { return tcc::contains(t, to_word(word)); },
        py::arg("trellis"), py::arg("word"));
  m.def("enumerate_codewords", [](const tcc::Trellis& t) {
    std::vector<std::vector<int>> out;
    for (const auto& w : tcc::enumerate_codewords(t)) out.push_back(from_word(w));
    return out;
  });

  m.def("decode",
        [](const tcc::IntersectionCode& code, const tcc::ChannelModel& ch, const tcc::ReceivedWord& r,
           const tcc::DecoderConfig& cfg) { return tcc::decode(code, ch, r, cfg); },
        py::arg("code"), py::arg("channel"), py::arg("received"), py::arg("config") = tcc::DecoderConfig{});
  m.def("bp_decode",
        [](const tcc::IntersectionCode& code, const tcc::ChannelModel& ch, const tcc::ReceivedWord& r,
           const tcc::BpConfig& cfg) { return tcc::bp_decode(code, ch, r, cfg); },
        py::arg("code"), py::arg("channel"), py::arg("received"), py::arg("config") = tcc::BpConfig{});

  m.def("ml_codeword_bruteforce",
        [](const tcc::IntersectionCode& code, const tcc::ReceivedWord& r) {
          const tcc::MlResult res = tcc::ml_codeword_bruteforce(code, r);
          return py::make_tuple(from_word(res.word), res.score, res.tie);
        },
        py::arg("code"), py::arg("received"));
  m.def("xi_bruteforce",
        [](const tcc::IntersectionCode& code, const std::vector<double>& w1, const std::vector<double>& w2,
           double lambda) {
          const tcc::XiOracle o = tcc::xi_bruteforce(code, w1, w2, lambda);
          std::vector<py::tuple> splits;
          for (const auto& s : o.splits) splits.push_back(py::make_tuple(s.log_xi_m1, s.log_xi_0, s.log_xi_p1));
          return py::make_tuple(o.log_total, splits);
        },
        py::arg("code"), py::arg("w1"), py::arg("w2"), py::arg("lambda"));

  m.def("sample_codeword",
        [](const tcc::IntersectionCode& code, std::uint64_t seed) {
          return from_word(tcc::sample_codeword(code, seed));
        },
        py::arg("code"), py::arg("seed"));
  m.def("run_experiment",
        [](const std::string& config_path) {
          const tcc::ExperimentResult res = tcc::run_experiment(tcc::load_sim_config(config_path));
          std::vector<py::dict> rows;
          for (const auto& a : res.aggregates) {
            py::dict d;
            d["sweep"] = a.sweep;
            d["decoder"] = a.decoder;
            d["trials"] = a.trials;
            d["fer"] = a.fer;
            d["fer_lo"] = a.fer_lo;
            d["fer_hi"] = a.fer_hi;
            d["ber"] = a.ber;
            rows.push_back(std::move(d));
          }
          return rows;
        },
        py::arg("config_path"));
}
