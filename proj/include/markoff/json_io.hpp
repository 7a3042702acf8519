#pragma once

// JSON wire formats:
//   polynomial   {"p": 13, "coeffs": [11, 10, 1]}       ascending, no trailing zeros
//   triple       {"x": <poly>, "y": <poly>, "z": <poly>}
//   tree         {"triple": <triple>, "children": [<tree>, <tree>]}   leaves: []
//   count report {"value": n, "terms": [{"d": .., "E": .., "multiplier": ..}]}

#include <string>

#include "json.hpp"
#include "markoff/counting.hpp"
#include "markoff/euclid.hpp"
#include "markoff/oracle.hpp"
#include "markoff/poly.hpp"
#include "markoff/surface.hpp"
#include "markoff/tree.hpp"

namespace markoff {

using json = nlohmann::json;

inline json to_json(const Polynomial& f) {
  json coeffs = json::array();
  for (u64 c : f.coeffs()) coeffs.push_back(c);
  return {{"p", f.p()}, {"coeffs", std::move(coeffs)}};
}

inline Polynomial poly_from_json(const json& j) {
  try {
    const PrimeModulus mod(j.at("p").get<u64>());
    std::vector<u64> coeffs;
    for (const auto& c : j.at("coeffs")) {
      const u64 v = c.get<u64>();
      if (v >= mod.value()) throw Error(ErrorCode::InvalidArgument, "coefficient out of range [0, p)");
      coeffs.push_back(v);
    }
    if (!coeffs.empty() && coeffs.back() == 0) {
      throw Error(ErrorCode::InvalidArgument, "trailing zero coefficient");
    }
    return Polynomial(mod, std::move(coeffs));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed polynomial JSON: ") + e.what());
  }
}

inline json to_json(const MarkoffTriple& P) {
  return {{"x", to_json(P.x())}, {"y", to_json(P.y())}, {"z", to_json(P.z())}};
}

inline MarkoffTriple triple_from_json(const json& j) {
  try {
    MarkoffTriple P(poly_from_json(j.at("x")), poly_from_json(j.at("y")), poly_from_json(j.at("z")));
    if (!(P.x().modulus() == P.y().modulus() && P.y().modulus() == P.z().modulus())) {
      throw Error(ErrorCode::ModulusMismatch, "triple coordinates over different fields");
    }
    return P;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed triple JSON: ") + e.what());
  }
}

/// -infinity becomes null.
inline json to_json(const Signature& s) {
  json out = json::array();
  for (const auto& d : s.degrees) out.push_back(d.is_finite() ? json(d.value()) : json(nullptr));
  return out;
}

inline json to_json(const MarkoffTree& t) {
  json children = json::array();
  for (const auto& c : t.children) children.push_back(to_json(c));
  return {{"triple", to_json(t.triple)}, {"children", std::move(children)}};
}

inline json to_json(const GroupWord& word) {
  json out = json::array();
  for (const auto& g : word) out.push_back(to_string(g));
  return out;
}

inline GroupWord word_from_json(const json& j) {
  GroupWord word;
  for (const auto& g : j) word.push_back(parse_generator(g.get<std::string>()));
  return word;
}

inline json to_json(const FundamentalForm& form) {
  if (const auto* z = std::get_if<ZeroForm>(&form)) {
    return {{"kind", "zero"}, {"f", to_json(z->f)}, {"sign", z->sign}};
  }
  const auto& c = std::get<ConstantForm>(form);
  return {{"kind", "constant"}, {"f", to_json(c.f)}, {"a", c.a}, {"sign", c.sign}};
}

inline json to_json(const euclid::EuclidTriple& T) { return json::array({T.tau1, T.tau2, T.tau3}); }

inline json to_json(const counting::CountReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back({{"d", t.d}, {"E", t.E}, {"multiplier", t.multiplier}});
  json out = {{"value", r.value}, {"terms", std::move(terms)}};
  if (r.empty_by_missing_i) out["empty"] = true;
  return out;
}

inline json to_json(const counting::Rational& r) { return r.to_string(); }

inline json to_json(const oracle::CensusReport& r) {
  auto opt = [](const auto& v) { return v ? json(*v) : json(nullptr); };
  auto opt_ratio = [](const std::optional<counting::Rational>& v) { return v ? to_json(*v) : json(nullptr); };
  return {
      {"q", r.q},
      {"A", to_json(r.A)},
      {"n", r.n},
      {"convention", oracle::to_string(r.convention)},
      {"total", r.total},
      {"fundamental_count", r.fundamental_count},
      {"nonfundamental_count", r.nonfundamental_count},
      {"constant_descent_count", r.constant_descent_count},
      {"formula_value", opt(r.formula_value)},
      {"fundamental_term", opt(r.fundamental_term)},
      {"nonfundamental_term", opt(r.nonfundamental_term)},
      {"per_class_ratios",
       {{"fundamental", opt_ratio(r.fundamental_ratio)}, {"nonfundamental", opt_ratio(r.nonfundamental_ratio)},
        {"nonfundamental_excluding_constant_descent", opt_ratio(r.regular_nonfundamental_ratio)}}},
  };
}

}  // namespace markoff
