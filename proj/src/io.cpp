// Copyright 2026 The renyicap developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "renyicap/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace renyicap::io {

json number_or_inf(double v) {
  if (std::isinf(v) && v > 0.0) return json("inf");
  return json(v);
}

double number_from(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf")
      return std::numeric_limits<double>::infinity();
    throw ParseError("expected a number or \"inf\"");
  }
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") ||
      !j.contains("data"))
    throw ParseError("matrix: expected {rows, cols, data}");
  const Index rows = j.at("rows").get<Index>();
  const Index cols = j.at("cols").get<Index>();
  const json& data = j.at("data");
  if (rows < 1 || cols < 1) throw ParseError("matrix: non-positive shape");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols)
    throw ParseError("matrix: data length does not equal rows * cols");
  Matrix m(rows, cols);
  Index k = 0;
  for (const auto& entry : data) {
    if (!entry.is_array() || entry.size() != 2)
      throw ParseError("matrix: entries must be [re, im] pairs");
    const double re = entry[0].get<double>();
    const double im = entry[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw ParseError("matrix: non-finite entry");
    m(k / cols, k % cols) = Complex(re, im);
    ++k;
  }
  return m;
}

json density_to_json(const DensityMatrix& rho) {
  return matrix_to_json(rho.matrix());
}

DensityMatrix density_from_json(const json& j) {
  return DensityMatrix(HermitianOperator(matrix_from_json(j)));
}

json channel_to_json(const KrausChannel& ch) {
  json kraus = json::array();
  for (const auto& a : ch.kraus()) kraus.push_back(matrix_to_json(a));
  return json{{"dim_in", ch.dim_in()},
              {"dim_out", ch.dim_out()},
              {"kraus", std::move(kraus)},
              {"trace_preserving", ch.is_trace_preserving()}};
}

KrausChannel channel_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dim_in") || !j.contains("dim_out") ||
      !j.contains("kraus"))
    throw ParseError("channel: expected {dim_in, dim_out, kraus}");
  const Index dim_in = j.at("dim_in").get<Index>();
  const Index dim_out = j.at("dim_out").get<Index>();
  std::vector<Matrix> kraus;
  for (const auto& k : j.at("kraus")) kraus.push_back(matrix_from_json(k));
  KrausChannel ch(dim_in, dim_out, std::move(kraus));
  if (j.contains("trace_preserving") &&
      j.at("trace_preserving").get<bool>() != ch.is_trace_preserving())
    throw InvariantError(
        "channel: trace_preserving flag contradicts the Kraus operators");
  return ch;
}

json ensemble_to_json(const Ensemble& ens) {
  json states = json::array();
  for (const auto& st : ens.states) states.push_back(density_to_json(st));
  return json{{"probs", ens.probs}, {"states", std::move(states)}};
}

Ensemble ensemble_from_json(const json& j) {
  if (!j.is_object() || !j.contains("probs") || !j.contains("states"))
    throw ParseError("ensemble: expected {probs, states}");
  std::vector<double> probs = j.at("probs").get<std::vector<double>>();
  std::vector<DensityMatrix> states;
  for (const auto& s : j.at("states")) states.push_back(density_from_json(s));
  return Ensemble(std::move(probs), std::move(states));
}

json codespec_to_json(const CodeSpec& spec) {
  return json{{"n", spec.n},
              {"R", spec.rate},
              {"ensemble", ensemble_to_json(spec.ensemble)},
              {"seed", spec.seed}};
}

CodeSpec codespec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("R") ||
      !j.contains("ensemble"))
    throw ParseError("code spec: expected {n, R, ensemble, seed}");
  const std::uint64_t seed =
      j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 0;
  return CodeSpec(j.at("n").get<int>(), j.at("R").get<double>(),
                  ensemble_from_json(j.at("ensemble")), seed);
}

json divergence_to_json(const DivergenceValue& v, const std::string& kind,
                        double alpha) {
  return json{{"value_bits", number_or_inf(v.value)},
              {"support_ok", v.support_ok},
              {"kind", kind},
              {"alpha", alpha}};
}

json radius_to_json(const RadiusResult& r) {
  return json{{"value_bits", number_or_inf(r.value)},
              {"sigma_star", density_to_json(r.sigma_star)},
              {"worst_input", density_to_json(r.worst_input)},
              {"restarts_used", r.restarts_used},
              {"converged", r.converged},
              {"gap_estimate", r.gap_estimate}};
}

json bound_to_json(const BoundReport& rep) {
  json comps = json::object();
  for (const auto& [key, value] : rep.components)
    comps[key] = number_or_inf(value);
  return json{{"p_succ_bound", rep.p_succ_bound},
              {"alpha_used", rep.alpha_used},
              {"exponent_bits_per_use", rep.exponent},
              {"n", rep.n},
              {"rate", rep.rate},
              {"vacuous", rep.vacuous},
              {"components", std::move(comps)}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace renyicap::io
