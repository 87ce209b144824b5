// Copyright 2026 the cpir authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cpir/attacks.hpp"
#include "cpir/net.hpp"
#include "cpir/schemes.hpp"
#include "cpir/wire.hpp"

namespace py = pybind11;
using namespace cpir;

namespace {

// The Python surface works with scheme names and plain lists; the C++ side
// holds the instances. Keeping instances in a capsule-like holder avoids
// binding std::function members.
struct PyScheme {
  explicit PyScheme(SchemeInstance inst) : inst(std::move(inst)) {}
  SchemeInstance inst;
};

PyScheme make_by_name(const std::string& name) {
  if (name == "basic") return PyScheme(make_basic(default_basic()));
  if (name == "hhwz") return PyScheme(make_hhwz(default_hhwz()));
  if (name == "amg") return PyScheme(make_amg(default_amg()));
  if (name == "rlwe") return PyScheme(make_rlwe(default_rlwe()));
  throw std::invalid_argument("unknown scheme: " + name);
}

std::vector<uint8_t> to_bytes(const py::bytes& b) {
  const std::string s = b;
  return std::vector<uint8_t>(s.begin(), s.end());
}

py::bytes from_bytes(const std::vector<uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

}  // namespace

PYBIND11_MODULE(cpir, m) {
  m.doc() = "Code-based private information retrieval: schemes, attacks, wire codec";

  py::class_<PyScheme>(m, "Scheme")
      .def(py::init(&make_by_name), py::arg("name"))
      .def_property_readonly("name",
                             [](const PyScheme& s) {
                               switch (scheme_id_of(s.inst.params)) {
                                 case SchemeId::Basic: return "basic";
                                 case SchemeId::Hhwz: return "hhwz";
                                 case SchemeId::Amg: return "amg";
                                 default: return "rlwe";
                               }
                             })
      .def_property_readonly("element_width", [](const PyScheme& s) { return s.inst.ctx.width(); })
      .def_property_readonly("max_db_size", [](const PyScheme& s) { return s.inst.max_db_size; })
      .def("lift", [](const PyScheme& s, uint64_t u) { return s.inst.lift_x(u); })
      .def("unlift", [](const PyScheme& s, const Element& e) { return s.inst.unlift_x(e); })
      .def("in_domain", [](const PyScheme& s, const Element& e) { return s.inst.in_x(e); })
      .def("f", [](const PyScheme& s, const Element& e) { return s.inst.f(e); });

  // Ring arithmetic on the scheme's element ring.
  m.def("ring_add", [](const PyScheme& s, const Element& a, const Element& b) { return add(s.inst.ctx, a, b); });
  m.def("ring_mul", [](const PyScheme& s, const Element& a, const Element& b) { return mul(s.inst.ctx, a, b); });
  m.def("ring_invert",
        [](const PyScheme& s, const Element& a) { return invert(s.inst.ctx, a); });

  // One full local retrieval; returns (retrieved, wanted, query_frame).
  m.def(
      "round_trip",
      [](const PyScheme& s, size_t db_size, size_t b, uint64_t seed) {
        Rng rng(seed);
        Vec files;
        for (size_t i = 0; i < db_size; ++i) files.push_back(s.inst.sample_x(rng));
        const Database db = make_database(s.inst, files);
        auto [query, secret] = gen_query(s.inst, db_size, b, rng);
        const Element got = extract(s.inst, secret, gen_reply(query, db));
        return py::make_tuple(got, files[b - 1], from_bytes(encode_query(query)));
      },
      py::arg("scheme"), py::arg("db_size"), py::arg("b"), py::arg("seed"));

  // Attacks on a serialized query frame. Returns a dict mirroring the report.
  m.def(
      "attack",
      [](const py::bytes& transcript, const std::string& strategy, size_t block, uint64_t seed) {
        const Query query = decode_query(decode_message(to_bytes(transcript)));
        QueryMatrix qm = query_matrix(query);
        if (query.scheme == SchemeId::Rlwe) qm = reinterpret_prime(coefficient_rows(qm));
        AttackReport report;
        if (strategy == "unitvec") {
          report = unit_vector_attack(qm);
        } else if (strategy == "rank") {
          report = rank_drop_attack(qm);
        } else if (strategy == "lattice") {
          const auto* params = std::get_if<AmgParams>(&query.params);
          if (!params) throw std::invalid_argument("lattice strategy needs an amg transcript");
          report = amg_lattice_attack(qm, params->t, block);
        } else {
          throw std::invalid_argument("unknown strategy: " + strategy);
        }
        Rng rng(seed);
        py::dict out;
        out["strategy"] = report.strategy;
        out["stats"] = report.stats;
        out["guess"] = report.guess ? py::cast(*report.guess) : py::none();
        out["candidates"] = report.candidates;
        out["resolved"] = resolve_guess(report, query.db_size(), rng);
        return out;
      },
      py::arg("transcript"), py::arg("strategy"), py::arg("block") = 4, py::arg("seed") = 1);

  // Wire codec round-trip helpers.
  m.def("decode_frame", [](const py::bytes& frame) {
    const WireMessage msg = decode_message(to_bytes(frame));
    py::dict out;
    out["kind"] = static_cast<int>(msg.kind);
    out["scheme_id"] = msg.scheme_id;
    out["body"] = from_bytes(msg.body);
    return out;
  });
  m.def("encode_frame", [](int kind, int scheme_id, const py::bytes& body) {
    WireMessage msg;
    msg.kind = static_cast<MsgKind>(kind);
    msg.scheme_id = static_cast<uint8_t>(scheme_id);
    msg.body = to_bytes(body);
    return from_bytes(encode_message(msg));
  });

  m.def(
      "comm_cost",
      [](const PyScheme& s, uint64_t db_size, const std::string& setup_name, uint64_t chunks) {
        Setup setup = Setup::flat();
        if (setup_name == "matrix") setup = Setup::matrix_sqrt();
        if (setup_name == "iter") setup = Setup::iterative(chunks);
        const CommCost cost = comm_cost(s.inst, db_size, setup);
        py::dict out;
        out["uplink_element_bytes"] = cost.uplink_element_bytes;
        out["uplink_framing_bytes"] = cost.uplink_framing_bytes;
        out["downlink_element_bytes"] = cost.downlink_element_bytes;
        out["downlink_framing_bytes"] = cost.downlink_framing_bytes;
        return out;
      },
      py::arg("scheme"), py::arg("db_size"), py::arg("setup") = "flat", py::arg("chunks") = 1);

  py::register_exception<WireError>(m, "WireFormatError");
  py::register_exception<RecoveryError>(m, "RecoveryFailure");
}
