// Copyright 2026 The quantum-grueneisen Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QG_REPORT_IO_HPP
#define QG_REPORT_IO_HPP

// JSON (de)serialization of scan reports.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qg/gamma.hpp"

namespace qg::io {

using nlohmann::json;

namespace detail {

inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

inline gamma::Status parse_status(const std::string& s) {
  for (auto st : {gamma::Status::ok, gamma::Status::component_divergence_suspected,
                  gamma::Status::denominator_near_zero}) {
    if (s == gamma::to_string(st)) return st;
  }
  throw std::invalid_argument("unknown status '" + s + "'");
}

inline gamma::Component parse_component(const std::string& s) {
  if (s == "mixed") return gamma::Component::numerator;
  if (s == "second") return gamma::Component::denominator;
  throw std::invalid_argument("unknown component '" + s + "'");
}

}  // namespace detail

inline json to_json(const gamma::GammaEstimate& e) {
  return json{{"mixed", e.numerator},
              {"second", e.denominator},
              {"gamma", detail::number(e.gamma)},
              {"step_h", e.step_h},
              {"step_g", e.step_g},
              {"err_mixed", e.err_numerator},
              {"err_second", e.err_denominator},
              {"status", gamma::to_string(e.status)}};
}

inline json to_json(const gamma::ScanReport& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    json jp{{"x", p.x}, {"evaluated", p.evaluated}};
    if (p.evaluated) jp["estimate"] = to_json(p.estimate);
    points.push_back(std::move(jp));
  }
  json cands = json::array();
  for (const auto& c : r.divergence_candidates) {
    json comps = json::array();
    for (auto comp : c.components) comps.push_back(gamma::to_string(comp));
    cands.push_back({{"lo", c.lo}, {"hi", c.hi}, {"components", comps}, {"locus", c.locus}});
  }
  json signs = json::array();
  for (const auto& s : r.sign_changes) {
    signs.push_back({{"component", gamma::to_string(s.component)},
                     {"lo", s.lo},
                     {"hi", s.hi},
                     {"kind", gamma::to_string(s.kind)}});
  }
  return json{{"model", r.model},
              {"axis", gamma::to_string(r.axis)},
              {"fixed", r.fixed},
              {"grid", r.grid},
              {"points", points},
              {"divergence_candidates", cands},
              {"sign_changes", signs}};
}

inline gamma::ScanReport scan_report_from_json(const json& j) {
  gamma::ScanReport r;
  r.model = j.at("model").get<std::string>();
  r.axis = j.at("axis").get<std::string>() == "h" ? gamma::Axis::h : gamma::Axis::g;
  r.fixed = j.at("fixed").get<double>();
  r.grid = j.at("grid").get<std::vector<double>>();
  for (const auto& jp : j.at("points")) {
    gamma::ScanPoint p;
    p.x = jp.at("x").get<double>();
    p.evaluated = jp.at("evaluated").get<bool>();
    if (p.evaluated) {
      const auto& e = jp.at("estimate");
      p.estimate.numerator = e.at("mixed").get<double>();
      p.estimate.denominator = e.at("second").get<double>();
      p.estimate.gamma = detail::number(e.at("gamma"));
      p.estimate.step_h = e.at("step_h").get<double>();
      p.estimate.step_g = e.at("step_g").get<double>();
      p.estimate.err_numerator = e.at("err_mixed").get<double>();
      p.estimate.err_denominator = e.at("err_second").get<double>();
      p.estimate.status = detail::parse_status(e.at("status").get<std::string>());
    }
    r.points.push_back(p);
  }
  for (const auto& jc : j.at("divergence_candidates")) {
    gamma::DivergenceCandidate c;
    c.lo = jc.at("lo").get<double>();
    c.hi = jc.at("hi").get<double>();
    c.locus = jc.at("locus").get<bool>();
    for (const auto& comp : jc.at("components")) {
      c.components.push_back(detail::parse_component(comp.get<std::string>()));
    }
    r.divergence_candidates.push_back(c);
  }
  for (const auto& js : j.at("sign_changes")) {
    gamma::SignChange s;
    s.component = detail::parse_component(js.at("component").get<std::string>());
    s.lo = js.at("lo").get<double>();
    s.hi = js.at("hi").get<double>();
    s.kind = js.at("kind").get<std::string>() == "pole" ? gamma::SignKind::pole
                                                        : gamma::SignKind::zero;
    r.sign_changes.push_back(s);
  }
  return r;
}

}  // namespace qg::io

#endif  // QG_REPORT_IO_HPP
