#include "chenholo/scenario.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "chenholo/randgen.hpp"

namespace chenholo {

using nlohmann::json;

void Scenario::validate() const {
  if (m < 0 || m > 3) throw std::invalid_argument("Scenario: chart dimension out of range");
  for (const auto& s : systems) s.validate();
  for (int k = 0; k < int(chains.size()); ++k) chain(k).validate();
  if (!gauges.empty() && gauges.size() != systems.size())
    throw std::invalid_argument("Scenario: gauges must align with systems");
  if (!homotopy.empty() && int(homotopy.size()) != m)
    throw std::invalid_argument("Scenario: homotopy must have one component per chart variable");
}

TensorChain Scenario::chain(int k) const {
  const ChainDesc& d = chains.at(size_t(k));
  if (d.system_indices.size() != d.xis.size() + 1)
    throw std::invalid_argument("Scenario: chain needs one system per endpoint");
  TensorChain c;
  for (int idx : d.system_indices) c.systems.push_back(systems.at(size_t(idx)));
  c.xis = d.xis;
  return c;
}

json rational_to_json(const Rational& r) { return rational_to_string(r); }

Rational rational_from_json(const json& j) {
  return rational_from_string(j.get<std::string>());
}

json poly_to_json(const MultiPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms())
    terms.push_back(json{{"e", e}, {"c", rational_to_json(c)}});
  return json{{"vars", p.vars()}, {"terms", terms}};
}

MultiPoly poly_from_json(const json& j) {
  std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
  MultiPoly p;
  for (const auto& t : j.at("terms"))
    p += MultiPoly::monomial(rational_from_json(t.at("c")), vars,
                             t.at("e").get<std::vector<int>>());
  return p;
}

json space_to_json(const GradedSpace& v) {
  json dims = json::array();
  for (const auto& [k, d] : v.dims) dims.push_back(json::array({k, d}));
  return json{{"dims", dims}};
}

GradedSpace space_from_json(const json& j) {
  GradedSpace v;
  for (const auto& kd : j.at("dims")) v.dims[kd.at(0).get<int>()] = kd.at(1).get<int>();
  return v;
}

json flag_to_json(const Flag& f) { return json(f.layers); }

Flag flag_from_json(const json& j, const GradedSpace& v) {
  Flag f;
  f.space = v;
  f.layers = j.get<std::vector<std::vector<int>>>();
  f.validate();
  return f;
}

json homform_to_json(const HomForm& w) {
  json terms = json::array();
  for (const auto& [k, mat] : w.terms()) {
    json rows = json::array();
    for (int r = 0; r < mat.rows; ++r) {
      json row = json::array();
      for (int c = 0; c < mat.cols; ++c) row.push_back(poly_to_json(mat(r, c)));
      rows.push_back(std::move(row));
    }
    terms.push_back(json{{"dx", k.mono.dx},
                         {"dt", k.mono.dt},
                         {"src_deg", k.src_deg},
                         {"tgt_deg", k.tgt_deg},
                         {"mat", std::move(rows)}});
  }
  return json{{"m", w.m()},
              {"cylinder", w.cylinder()},
              {"src", space_to_json(w.src())},
              {"tgt", space_to_json(w.tgt())},
              {"terms", std::move(terms)}};
}

HomForm homform_from_json(const json& j) {
  GradedSpace src = space_from_json(j.at("src"));
  GradedSpace tgt = space_from_json(j.at("tgt"));
  HomForm w(j.at("m").get<int>(), j.at("cylinder").get<bool>(), src, tgt);
  for (const auto& t : j.at("terms")) {
    int src_deg = t.at("src_deg").get<int>();
    int tgt_deg = t.at("tgt_deg").get<int>();
    PolyMat mat(tgt.dim(tgt_deg), src.dim(src_deg));
    const auto& rows = t.at("mat");
    for (int r = 0; r < mat.rows; ++r)
      for (int c = 0; c < mat.cols; ++c) mat(r, c) = poly_from_json(rows.at(size_t(r)).at(size_t(c)));
    w.add_term(FormMonomial{t.at("dx").get<uint32_t>(), t.at("dt").get<bool>()}, src_deg,
               tgt_deg, mat);
  }
  return w;
}

json superconnection_to_json(const Superconnection& s) {
  json j{{"space", space_to_json(s.space)}, {"alpha", homform_to_json(s.alpha)}};
  j["flag"] = s.flag ? flag_to_json(*s.flag) : json();
  return j;
}

Superconnection superconnection_from_json(const json& j) {
  Superconnection s;
  s.space = space_from_json(j.at("space"));
  s.alpha = homform_from_json(j.at("alpha"));
  if (!j.at("flag").is_null()) s.flag = flag_from_json(j.at("flag"), s.space);
  return s;
}

json scenario_to_json(const Scenario& sc) {
  json systems = json::array();
  for (const auto& s : sc.systems) systems.push_back(superconnection_to_json(s));
  json chains = json::array();
  for (const auto& c : sc.chains) {
    json xis = json::array();
    for (const auto& w : c.xis) xis.push_back(homform_to_json(w));
    chains.push_back(json{{"systems", c.system_indices}, {"xis", std::move(xis)}});
  }
  json gauges = json::array();
  for (const auto& g : sc.gauges)
    gauges.push_back(
        json{{"g", homform_to_json(g.g)}, {"beta_alpha", homform_to_json(g.beta_alpha)}});
  json homotopy = json::array();
  for (const auto& p : sc.homotopy) homotopy.push_back(poly_to_json(p));
  json j{{"name", sc.name},
         {"m", sc.m},
         {"cylinder", sc.cylinder},
         {"systems", std::move(systems)},
         {"chains", std::move(chains)},
         {"gauges", std::move(gauges)},
         {"homotopy", std::move(homotopy)},
         {"homotopy_q", sc.homotopy_q}};
  j["seed"] = sc.seed ? json(*sc.seed) : json();
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario sc;
  sc.name = j.at("name").get<std::string>();
  sc.m = j.at("m").get<int>();
  sc.cylinder = j.at("cylinder").get<bool>();
  for (const auto& s : j.at("systems")) sc.systems.push_back(superconnection_from_json(s));
  for (const auto& c : j.at("chains")) {
    Scenario::ChainDesc d;
    d.system_indices = c.at("systems").get<std::vector<int>>();
    for (const auto& w : c.at("xis")) d.xis.push_back(homform_from_json(w));
    sc.chains.push_back(std::move(d));
  }
  for (const auto& g : j.at("gauges"))
    sc.gauges.push_back(Scenario::GaugeData{homform_from_json(g.at("g")),
                                            homform_from_json(g.at("beta_alpha"))});
  for (const auto& p : j.at("homotopy")) sc.homotopy.push_back(poly_from_json(p));
  sc.homotopy_q = j.at("homotopy_q").get<int>();
  if (!j.at("seed").is_null()) sc.seed = j.at("seed").get<uint64_t>();
  sc.validate();
  return sc;
}

std::string scenario_to_string(const Scenario& sc) { return scenario_to_json(sc).dump(2); }

Scenario scenario_from_string(const std::string& text) {
  return scenario_from_json(json::parse(text));
}

namespace {
// One basis vector per flag layer, internal degrees drawn from {-1, 0, 1}.
std::pair<GradedSpace, Flag> draw_space(std::mt19937_64& rng, int nu) {
  std::uniform_int_distribution<int> degree(-1, 1);
  std::vector<int> degs;
  GradedSpace v;
  for (int i = 0; i < nu; ++i) {
    int d = degree(rng);
    degs.push_back(d);
    v.dims[d] += 1;
  }
  // Assign each drawn vector its global index, then shuffle into layers.
  std::map<int, int> used;
  std::vector<int> globals;
  for (int d : degs) {
    globals.push_back(v.global_index(d, used[d]));
    used[d] += 1;
  }
  std::shuffle(globals.begin(), globals.end(), rng);
  Flag f;
  f.space = v;
  for (int g : globals) f.layers.push_back({g});
  f.validate();
  return {v, f};
}
}  // namespace

Scenario generate_scenario(uint64_t seed, const Profile& profile) {
  if (profile.m < 1 || profile.m > 3 || profile.n < 0 || profile.n > 3 || profile.deg < 0 ||
      profile.deg > 3)
    throw std::invalid_argument("generate_scenario: profile out of bounds");
  std::mt19937_64 rng(seed);
  Scenario sc;
  sc.name = "seeded-" + std::to_string(seed);
  sc.m = profile.m;
  sc.cylinder = true;
  sc.seed = seed;

  int n = profile.n;
  if (profile.nu < 2) {
    // Degenerate profile: everything zero over a two-dimensional space.
    GradedSpace v;
    v.dims[0] = 2;
    Flag f;
    f.space = v;
    f.layers = {{0}, {1}};
    for (int i = 0; i <= n; ++i)
      sc.systems.push_back(Superconnection{v, HomForm(sc.m, true, v, v), f});
    Scenario::ChainDesc d;
    for (int i = 0; i <= n; ++i) d.system_indices.push_back(i);
    for (int i = 0; i < n; ++i) d.xis.push_back(HomForm(sc.m, true, v, v));
    sc.chains.push_back(std::move(d));
    sc.validate();
    return sc;
  }

  std::uniform_int_distribution<int> xi_degree(0, 2);
  std::vector<GradedSpace> spaces;
  for (int i = 0; i <= n; ++i) {
    auto [v, f] = draw_space(rng, profile.nu);
    FlatDraw draw = generate_flat(rng(), v, f, sc.m, profile.deg, true);
    spaces.push_back(v);
    sc.systems.push_back(draw.s);
    sc.gauges.push_back(
        Scenario::GaugeData{draw.g, HomForm::from_hom(draw.alpha_c, sc.m, true)});
  }
  Scenario::ChainDesc d;
  for (int i = 0; i <= n; ++i) d.system_indices.push_back(i);
  for (int i = 0; i < n; ++i)
    d.xis.push_back(rand_homform(rng, sc.m, true, spaces[size_t(i)], spaces[size_t(i) + 1],
                                 xi_degree(rng), profile.deg));
  sc.chains.push_back(std::move(d));
  sc.validate();
  return sc;
}

}  // namespace chenholo
