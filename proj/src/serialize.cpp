#include "qndi/serialize.hpp"

#include "qndi/errors.hpp"

namespace qndi::serialize {

using nlohmann::json;

namespace {

json ordering_names() {
  json names = json::array();
  for (const char* n : phase_space::kVariableNames) names.push_back(n);
  return names;
}

}  // namespace

json matrix_to_json(const phase_space::SymplecticMatrix& m) {
  json entries = json::array();
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c) entries.push_back(m(r, c));
  return json{{"ordering", ordering_names()}, {"entries", entries}};
}

phase_space::SymplecticMatrix matrix_from_json(const json& j) {
  const auto& entries = j.at("entries");
  if (entries.size() != 36)
    throw ConfigError("matrix_from_json: expected 36 entries");
  phase_space::Mat6 m;
  for (int r = 0; r < 6; ++r)
    for (int c = 0; c < 6; ++c)
      m(r, c) = entries.at(static_cast<std::size_t>(6 * r + c)).get<double>();
  return phase_space::SymplecticMatrix(m);
}

json map_to_json(const phase_space::ConditionalAffineMap& m) {
  json entries = json::array();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 6; ++c) entries.push_back(m(r, c));
  return json{{"ordering", ordering_names()},
              {"rows", json::array({"x_A_out", "p_A_out"})},
              {"entries", entries}};
}

json state_to_json(const wigner::GaussPolyWigner& w) {
  const int d = w.dim();
  json poly = json::array();
  for (const auto& [e, c] : w.poly().terms())
    poly.push_back(json::array({json(e), json(c)}));
  json a = json::array();
  for (int r = 0; r < d; ++r) {
    json row = json::array();
    for (int c = 0; c < d; ++c) row.push_back(w.quad_form()(r, c));
    a.push_back(row);
  }
  json b = json::array();
  for (int i = 0; i < d; ++i) b.push_back(w.linear()(i));
  return json{{"dim", d},           {"poly", poly}, {"A", a},
              {"b", b},             {"c", w.log_scale()},
              {"degree_cap", w.degree_cap()}};
}

wigner::GaussPolyWigner state_from_json(const json& j) {
  const int d = j.at("dim").get<int>();
  if (d < 1) throw ConfigError("state_from_json: bad dimension");
  wigner::MultiPoly poly(d);
  for (const auto& term : j.at("poly")) {
    auto e = term.at(0).get<std::vector<int>>();
    poly.add_term(e, term.at(1).get<double>());
  }
  Eigen::MatrixXd a(d, d);
  const auto& ja = j.at("A");
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      a(r, c) = ja.at(static_cast<std::size_t>(r))
                    .at(static_cast<std::size_t>(c))
                    .get<double>();
  Eigen::VectorXd b(d);
  for (int i = 0; i < d; ++i)
    b(i) = j.at("b").at(static_cast<std::size_t>(i)).get<double>();
  const int cap = j.contains("degree_cap") ? j.at("degree_cap").get<int>()
                                           : wigner::kDefaultDegreeCap;
  return wigner::GaussPolyWigner(std::move(poly), std::move(a), std::move(b),
                                 j.at("c").get<double>(), cap);
}

json merit_to_json(const metrics::MeritReport& r) {
  return json{{"q", r.q},
              {"ps", r.ps},
              {"fidelity", r.fidelity},
              {"negativity", r.negativity}};
}

}  // namespace qndi::serialize
