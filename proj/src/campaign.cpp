#include "isoperi/campaign.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>

#include "isoperi/errors.hpp"
#include "isoperi/sampling.hpp"

namespace isoperi {

namespace {

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void require(CellResult& c, bool ok, const std::string& inequality, const std::string& detail) {
  if (!ok) c.violations.push_back(inequality + " violated: " + detail);
}

double ball_iq(std::size_t n) {
  const double nd = static_cast<double>(n);
  const double log_omega = 0.5 * nd * std::log(std::numbers::pi) - std::lgamma(0.5 * nd + 1.0);
  return nd * std::exp(log_omega / nd);
}

std::size_t pow2(std::size_t n) { return n < 63 ? std::size_t{1} << n : std::numeric_limits<std::size_t>::max(); }

struct CellSpec {
  std::string kind;
  std::size_t n = 0;
  std::string param_name;
  std::size_t param = 0;
};

CampaignReport run_cells(const std::string& name, const CampaignOptions& opt, io::Json options,
                         const std::vector<CellSpec>& specs, const std::function<void(CellResult&)>& run) {
  const auto start = std::chrono::steady_clock::now();
  CampaignReport rep;
  rep.campaign = name;
  rep.seed = opt.seed;
  rep.options = std::move(options);
  rep.cells = parallel_map<CellResult>(specs.size(), opt.workers, [&](std::size_t i) {
    CellResult c;
    c.index = i;
    c.kind = specs[i].kind;
    c.n = specs[i].n;
    c.param_name = specs[i].param_name;
    c.param = specs[i].param;
    c.seed = mix_seed(opt.seed, i);
    try {
      run(c);
    } catch (const Error& e) {
      c.violations.push_back(std::string("error: ") + e.what());
    } catch (const std::logic_error& e) {
      c.violations.push_back(std::string("internal error: ") + e.what());
    }
    c.passed = c.skipped || c.violations.empty();
    return c;
  });
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void band_over(CampaignReport& rep, const std::string& kind, const std::string& key, const std::string& name) {
  bool any = false;
  Band b;
  for (const CellResult& c : rep.cells) {
    if (c.kind != kind || c.skipped) continue;
    auto it = c.values.find(key);
    if (it == c.values.end()) continue;
    if (!any) b = {it->second, it->second};
    b.lo = std::min(b.lo, it->second);
    b.hi = std::max(b.hi, it->second);
    any = true;
  }
  if (any) rep.bands[name] = b;
}

io::Json options_json(const CampaignOptions& opt, std::size_t trials) {
  io::Json j{{"n_range", {opt.n_range.first, opt.n_range.second}}, {"seed", opt.seed}, {"trials", trials},
             {"samples", opt.samples}};
  if (opt.phi_range) j["phi_range"] = {opt.phi_range->first, opt.phi_range->second};
  if (opt.beta_range) j["beta_range"] = {opt.beta_range->first, opt.beta_range->second};
  if (opt.m_range) j["m_range"] = {opt.m_range->first, opt.m_range->second};
  return j;
}

void check_range(const IndexRange& r, const char* what) {
  if (r.first > r.second) throw UsageError(std::string(what) + ": empty range");
}

// --- theorem 1 -------------------------------------------------------------

std::vector<Vec> spanning_normals(std::size_t n, std::size_t count, Rng& rng) {
  for (;;) {
    std::vector<Vec> u;
    for (std::size_t i = 0; i < count; ++i) u.push_back(random_unit(n, rng));
    if (positively_spanning(n, u)) return u;
  }
}

void theorem1_anchor(CellResult& c) {
  const Polytope& p = extremal_facet_polytope(3, 8).result.body;
  const double expect = 2.0 * std::pow(3.0, 1.5) / std::cbrt(6.0);
  c.values["iq"] = p.iq();
  c.values["closed_form_iq"] = expect;
  c.labels["fixture"] = "cross-polytope n=3";
  require(c, std::abs(p.iq() - expect) <= 1e-9 * expect, "iq(B_l1^3) == 2 n^{3/2} / (n!)^{1/n} within 1e-9",
          num(p.iq()) + " vs " + num(expect));
}

void theorem1_cell(CellResult& c, std::size_t trials) {
  const std::size_t n = c.n, phi = c.param;
  if (n > kTheorem1MaxDim) {
    c.skipped = true;
    c.skip_reason = "exact kernel limited to n <= " + std::to_string(kTheorem1MaxDim);
    return;
  }
  const double nd = static_cast<double>(n);
  const double log_factor = std::sqrt(1.0 + std::log(static_cast<double>(phi) / nd));
  const ExtremalFacet ef = extremal_facet_polytope(n, phi);
  const Polytope& p = ef.result.body;
  const double iq = p.iq();
  c.values["iq"] = iq;
  c.values["facet_count"] = static_cast<double>(p.facet_count());
  c.values["upper_band"] = iq * log_factor / nd;
  c.labels["branch"] = ef.branch == ExtremalFacet::Branch::kSimplex ? "simplex"
                       : ef.branch == ExtremalFacet::Branch::kCross ? "cross"
                                                                    : "product";
  if (ef.branch == ExtremalFacet::Branch::kProduct) {
    c.values["m"] = static_cast<double>(ef.m);
    c.values["predicted_iq_bound"] = ef.predicted_iq_bound;
  }
  require(c, p.facet_count() == phi, "facet_count == phi", std::to_string(p.facet_count()) + " vs " + std::to_string(phi));
  const double ball = ball_iq(n);
  require(c, iq >= ball * (1.0 - 1e-9), "iq(P) >= iq(B^n)", num(iq) + " < " + num(ball));

  std::vector<Vec> own;
  for (const FacetData& f : p.facets()) own.push_back(f.normal);
  const double own_iq = lindelof_body(n, own).iq();
  c.values["lindelof_iq_own_normals"] = own_iq;
  require(c, iq >= own_iq - 1e-9, "iq(P) >= iq(K0(normals of P)) - 1e-9", num(iq) + " < " + num(own_iq));

  Rng rng(c.seed);
  std::size_t violations = 0;
  double min_gap = std::numeric_limits<double>::infinity(), tangency = 0.0;
  std::vector<double> cp;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::vector<Vec> u = spanning_normals(n, phi, rng);
    const Polytope k0 = lindelof_body(n, u);
    const double iq0 = k0.iq();
    tangency = std::max(tangency, std::abs(iq_circumscribed(k0) - iq0) / iq0);
    cp.push_back(nd * std::pow(k0.volume(), 1.0 / nd) * log_factor);
    std::vector<Halfspace> hs;
    for (const Vec& v : u) hs.push_back({v, 0.5 + uniform01(rng)});
    const double gap = Polytope::from_h(HPolytope(n, hs)).iq() - iq0;
    min_gap = std::min(min_gap, gap);
    if (gap < -1e-9) {
      ++violations;
      require(c, false, "iq(K) >= iq(K0) - 1e-9", "trial " + std::to_string(t) + " gap " + num(gap));
    }
  }
  require(c, tangency <= 1e-9, "iq_circumscribed(K0) == iq(K0) within 1e-9", num(tangency));
  c.values["lindelof_trials"] = static_cast<double>(trials);
  c.values["lindelof_violations"] = static_cast<double>(violations);
  if (trials > 0) {
    std::sort(cp.begin(), cp.end());
    double mean = 0.0;
    for (double v : cp) mean += v;
    c.values["lindelof_min_gap"] = min_gap;
    c.values["cp_constant_min"] = cp.front();
    c.values["cp_constant_max"] = cp.back();
    c.values["cp_constant_mean"] = mean / static_cast<double>(cp.size());
    c.values["cp_constant_median"] = cp[cp.size() / 2];
  }
}

// --- theorem 2 -------------------------------------------------------------

void theorem2_anchor(CellResult& c, std::uint64_t seed) {
  const Construction k = cube(3);
  PettyOptions po;
  po.seed = seed;
  const PositionResult r = petty_minimize(k.body, po);
  c.values["iq_after"] = r.iq_after;
  c.values["closed_form_minimal_iq"] = k.forms.minimal_iq.value_or(0.0);
  c.labels["fixture"] = "cube n=3";
  require(c, std::abs(r.iq_after - 6.0) <= 6e-9, "minimal iq of [-1,1]^3 == 2n within 1e-9", num(r.iq_after));
  require(c, k.forms.minimal_iq && std::abs(*k.forms.minimal_iq - 6.0) <= 6e-9,
          "closed-form minimal iq of [-1,1]^3 == 2n within 1e-9", num(k.forms.minimal_iq.value_or(0.0)));
}

void petty_checks(CellResult& c, const Polytope& k, const PositionResult& r, const std::string& prefix) {
  require(c, r.certified, prefix + "isotropy residual < 1e-8 (solver convergence)", num(r.isotropy_residual));
  require(c, r.iq_after <= r.iq_before + 1e-12, prefix + "iq_after <= iq_before + 1e-12",
          num(r.iq_after) + " > " + num(r.iq_before));
  const SchattenCheck s = schatten_bound_check(k, r);
  c.values[prefix + "schatten_lhs"] = s.lhs;
  c.values[prefix + "schatten_rhs"] = s.rhs;
  require(c, s.ok, prefix + "|A|_S1 <= n iq(K) / iq(AK) + 1e-8", num(s.lhs) + " > " + num(s.rhs));
}

void theorem2_cell(CellResult& c) {
  const std::size_t n = c.n, beta = c.param;
  if (n > kTheorem2MaxDim) {
    c.skipped = true;
    c.skip_reason = "exact cells limited to n <= " + std::to_string(kTheorem2MaxDim);
    return;
  }
  const ExtremalVertex ev = extremal_vertex_polytope(n, beta);
  const Polytope& p = ev.result.body;
  require(c, p.vertex_count() == beta, "vertex_count == beta",
          std::to_string(p.vertex_count()) + " vs " + std::to_string(beta));
  PettyOptions po;
  po.seed = c.seed;
  const PositionResult r = petty_minimize(p, po);
  c.values["iq_before"] = r.iq_before;
  c.values["iq_after"] = r.iq_after;
  c.values["isotropy_residual"] = r.isotropy_residual;
  c.values["iterations"] = r.iterations;
  c.values["restarts"] = r.restarts;
  c.values["target_band"] = ev.target_band;
  c.values["minimal_iq_band"] = r.iq_after / ev.target_band;
  c.labels["branch"] = ev.cube_branch ? "cube" : "l1sum";
  petty_checks(c, p, r, "");

  if (ev.base.forms.minimal_iq) {
    const double closed = *ev.base.forms.minimal_iq;
    const PositionResult rb = petty_minimize(ev.base.body, po);
    c.values["closed_form_minimal_iq"] = closed;
    c.values["base_iq_after"] = rb.iq_after;
    c.labels["closed_form"] = "hypotheses verified";
    require(c, std::abs(rb.iq_after - closed) <= 1e-6 * closed, "solver iq_after == closed-form minimal iq within 1e-6",
            num(rb.iq_after) + " vs " + num(closed));
    petty_checks(c, ev.base.body, rb, "base_");
  } else {
    c.labels["closed_form"] = "hypotheses not verified";
  }
}

// --- spectral --------------------------------------------------------------

HPolytope slab_body(std::size_t n, const std::vector<Vec>& y) {
  std::vector<Halfspace> hs;
  for (const Vec& v : y) {
    hs.push_back({v, 1.0});
    hs.push_back({-1.0 * v, 1.0});
  }
  return HPolytope(n, std::move(hs));
}

void spectral_anchor(CellResult& c) {
  std::vector<Vec> y;
  for (std::size_t j = 0; j < c.n; ++j) y.push_back(unit_vector(c.n, j));
  const SpectralCertificate s = spectral_certificate(slab_body(c.n, y));
  const double expect = 2.5 * static_cast<double>(c.n);
  c.values["lambda_bound"] = s.lambda_bound;
  c.values["five_m"] = s.five_m;
  c.labels["fixture"] = c.n == 1 ? "[-1,1]" : "[-1,1]^2";
  require(c, s.exact, "quadrature path", "Monte Carlo used");
  require(c, std::abs(s.lambda_bound - expect) <= 1e-9 * expect, "lambda_bound == 5n/2 within 1e-9",
          num(s.lambda_bound));
  require(c, s.passed, "lambda_bound <= 5m", num(s.lambda_bound));
}

void spectral_cell(CellResult& c, std::size_t trials, std::size_t samples) {
  const std::size_t n = c.n, m = c.param;
  if (m > kSpectralMaxSlabs) {
    c.skipped = true;
    c.skip_reason = "slab count limited to m <= " + std::to_string(kSpectralMaxSlabs);
    return;
  }
  const double nd = static_cast<double>(n);
  std::size_t failures = 0, symmetrized = 0;
  double worst_lambda = 0.0, worst_volume = 0.0, identity = 0.0, weight = 0.0, min_sym = 1.0;
  std::vector<double> constants;
  bool exact = true, volume_exact = true;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t ts = mix_seed(c.seed, t);
    Rng rng(ts);
    std::vector<Vec> y;
    for (;;) {
      y.clear();
      for (std::size_t i = 0; i < m; ++i) y.push_back(random_unit(n, rng));
      std::vector<Vec> both = y;
      for (const Vec& v : y) both.push_back(-1.0 * v);
      if (positively_spanning(n, both)) break;
    }
    HPolytope body = slab_body(n, y);
    std::size_t phi = 2 * m;
    if (n <= kMaxHullDim) {
      Polytope k = Polytope::from_h(body);
      if (t % 10 == 0) {
        Vec shift(n);
        for (double& v : shift) v = 2.0 * uniform01(rng) - 1.0;
        const Symmetrization s = central_symmetrize(k.translated(shift), ts);
        const double r = std::pow(s.volume_ratio, 1.0 / nd);
        min_sym = std::min(min_sym, r);
        require(c, r >= 0.5, "vol(K'')^{1/n} >= 0.5 vol(K)^{1/n}", "trial " + std::to_string(t) + ": " + num(r));
        k = s.body;
        body = k.hrep();
        ++symmetrized;
      }
      phi = k.facet_count();
    }
    const SpectralCertificate s = spectral_certificate(body, samples, ts, 1);
    exact = exact && s.exact;
    volume_exact = volume_exact && s.volume_exact;
    const std::string tag = "trial " + std::to_string(t) + ": ";
    const bool lam_ok = s.lambda_bound + s.halfwidth <= s.five_m;
    require(c, lam_ok, "lambda_bound + 4 sigma <= 5m", tag + num(s.lambda_bound) + " + " + num(s.halfwidth) + " > " + num(s.five_m));
    require(c, s.passed || !lam_ok, "vol(BK)^{1/n} <= 2 sqrt(m/n)", tag + num(s.vol_bound_lhs) + " > " + num(s.vol_bound_rhs));
    if (!s.passed) ++failures;
    const double id = s.identity_residual, ws = std::abs(s.weight_sum - nd);
    require(c, id <= 1e-9, "|sum c_i u_i u_i^T - I|_max <= 1e-9", tag + num(id));
    require(c, ws <= 1e-10, "|sum c_i - n| <= 1e-10", tag + num(ws));
    identity = std::max(identity, id);
    weight = std::max(weight, ws);
    worst_lambda = std::max(worst_lambda, (s.lambda_bound + s.halfwidth) / s.five_m);
    worst_volume = std::max(worst_volume, s.vol_bound_lhs / s.vol_bound_rhs);
    const double p = static_cast<double>(phi);
    constants.push_back(s.lambda_bound * s.vol_bound_lhs * s.vol_bound_lhs * nd / (p * p));
  }
  c.exact = exact;
  c.samples = exact ? 0 : samples;
  c.labels["volume"] = volume_exact ? "exact" : "monte carlo";
  c.values["trials"] = static_cast<double>(trials);
  c.values["failures"] = static_cast<double>(failures);
  c.values["symmetrized_trials"] = static_cast<double>(symmetrized);
  c.values["lambda_over_five_m_max"] = worst_lambda;
  c.values["vol_lhs_over_rhs_max"] = worst_volume;
  c.values["identity_residual_max"] = identity;
  c.values["weight_sum_error_max"] = weight;
  if (symmetrized > 0) c.values["symmetrization_ratio_min"] = min_sym;
  if (!constants.empty()) {
    std::sort(constants.begin(), constants.end());
    double mean = 0.0;
    for (double v : constants) mean += v;
    c.values["spectral_constant_min"] = constants.front();
    c.values["spectral_constant_max"] = constants.back();
    c.values["spectral_constant_mean"] = mean / static_cast<double>(constants.size());
  }
}

// --- serialization helpers -------------------------------------------------

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

double json_double(const io::Json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

}  // namespace

bool CampaignReport::passed() const {
  return std::all_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.passed; });
}

CampaignReport verify_theorem1(const CampaignOptions& opt) {
  check_range(opt.n_range, "n-range");
  if (opt.phi_range) check_range(*opt.phi_range, "phi-range");
  const std::size_t trials = opt.trials ? opt.trials : kTheorem1Trials;
  std::vector<CellSpec> specs{{"anchor", 3, "phi", 8}};
  for (std::size_t n = std::max<std::size_t>(opt.n_range.first, 1); n <= opt.n_range.second; ++n) {
    std::set<std::size_t> phis;
    if (opt.phi_range) {
      for (std::size_t f = std::max(opt.phi_range->first, n + 1); f <= opt.phi_range->second; ++f) phis.insert(f);
    } else {
      phis = {n + 1, 2 * n, 3 * n, 4 * n};
      if (n < 31) phis.insert(pow2(n));
    }
    for (std::size_t f : phis)
      if (f >= n + 1) specs.push_back({"extremal_facet", n, "phi", f});
  }
  CampaignReport rep = run_cells("theorem1", opt, options_json(opt, trials), specs, [&](CellResult& c) {
    if (c.kind == "anchor")
      theorem1_anchor(c);
    else
      theorem1_cell(c, trials);
  });
  band_over(rep, "extremal_facet", "upper_band", "upper_band");
  band_over(rep, "extremal_facet", "cp_constant_median", "cp_constant");
  return rep;
}

CampaignReport verify_theorem2(const CampaignOptions& opt) {
  check_range(opt.n_range, "n-range");
  if (opt.beta_range) check_range(*opt.beta_range, "beta-range");
  std::vector<CellSpec> specs{{"anchor", 3, "beta", 8}};
  for (std::size_t n = std::max<std::size_t>(opt.n_range.first, 1); n <= opt.n_range.second; ++n) {
    std::set<std::size_t> betas;
    if (opt.beta_range) {
      for (std::size_t b = std::max(opt.beta_range->first, 2 * n); b <= opt.beta_range->second; ++b)
        if (b % 2 == 0) betas.insert(b);
    } else {
      betas = {2 * n, 4 * n};
      if (n < 31) betas.insert(std::max(pow2(n), 2 * n));
    }
    for (std::size_t b : betas) specs.push_back({"extremal_vertex", n, "beta", b});
  }
  CampaignReport rep = run_cells("theorem2", opt, options_json(opt, 0), specs, [&](CellResult& c) {
    if (c.kind == "anchor")
      theorem2_anchor(c, c.seed);
    else
      theorem2_cell(c);
  });
  band_over(rep, "extremal_vertex", "minimal_iq_band", "minimal_iq_band");
  return rep;
}

CampaignReport verify_spectral(const CampaignOptions& opt) {
  check_range(opt.n_range, "n-range");
  if (opt.m_range) check_range(*opt.m_range, "m-range");
  if (opt.samples == 0) throw UsageError("samples must be positive");
  const std::size_t trials = opt.trials ? opt.trials : kSpectralTrials;
  std::vector<CellSpec> specs{{"anchor", 1, "m", 1}, {"anchor", 2, "m", 2}};
  for (std::size_t n = std::max<std::size_t>(opt.n_range.first, 1); n <= opt.n_range.second; ++n) {
    const std::size_t lo = std::max(opt.m_range ? opt.m_range->first : n, n);
    const std::size_t hi = opt.m_range ? opt.m_range->second : 8;
    for (std::size_t m = lo; m <= hi; ++m) specs.push_back({"slab_body", n, "m", m});
  }
  CampaignReport rep = run_cells("spectral", opt, options_json(opt, trials), specs, [&](CellResult& c) {
    if (c.kind == "anchor")
      spectral_anchor(c);
    else
      spectral_cell(c, trials, opt.samples);
  });
  band_over(rep, "slab_body", "spectral_constant_mean", "spectral_constant");
  band_over(rep, "slab_body", "lambda_over_five_m_max", "lambda_over_five_m");
  return rep;
}

io::Json report_to_json(const CampaignReport& r) {
  io::Json cells = io::Json::array();
  for (const CellResult& c : r.cells) {
    io::Json j{{"index", c.index},
               {"kind", c.kind},
               {"n", c.n},
               {"param_name", c.param_name},
               {"param", c.param},
               {"seed", c.seed},
               {"exact", c.exact},
               {"samples", c.samples},
               {"skipped", c.skipped},
               {"passed", c.passed},
               {"violations", c.violations},
               {"values", c.values},
               {"labels", c.labels}};
    if (c.skipped) j["skip_reason"] = c.skip_reason;
    cells.push_back(std::move(j));
  }
  io::Json bands = io::Json::object();
  for (const auto& [k, b] : r.bands) bands[k] = {{"lo", b.lo}, {"hi", b.hi}};
  return {{"campaign", r.campaign}, {"seed", r.seed},   {"options", r.options},
          {"passed", r.passed()},   {"bands", bands},   {"cells", cells}};
}

CampaignReport report_from_json(const io::Json& j) {
  try {
    CampaignReport r;
    r.campaign = j.at("campaign").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.options = j.value("options", io::Json::object());
    for (const auto& [k, b] : j.at("bands").items()) r.bands[k] = {json_double(b.at("lo")), json_double(b.at("hi"))};
    for (const io::Json& x : j.at("cells")) {
      CellResult c;
      c.index = x.at("index").get<std::size_t>();
      c.kind = x.at("kind").get<std::string>();
      c.n = x.at("n").get<std::size_t>();
      c.param_name = x.at("param_name").get<std::string>();
      c.param = x.at("param").get<std::size_t>();
      c.seed = x.at("seed").get<std::uint64_t>();
      c.exact = x.at("exact").get<bool>();
      c.samples = x.at("samples").get<std::size_t>();
      c.skipped = x.at("skipped").get<bool>();
      c.skip_reason = x.value("skip_reason", "");
      c.passed = x.at("passed").get<bool>();
      c.violations = x.at("violations").get<std::vector<std::string>>();
      for (const auto& [k, v] : x.at("values").items()) c.values[k] = json_double(v);
      c.labels = x.at("labels").get<std::map<std::string, std::string>>();
      r.cells.push_back(std::move(c));
    }
    return r;
  } catch (const io::Json::exception& e) {
    throw UsageError(std::string("not a campaign report: ") + e.what());
  }
}

std::string report_to_csv(const CampaignReport& r) {
  std::set<std::string> keys;
  for (const CellResult& c : r.cells) {
    for (const auto& kv : c.values) keys.insert(kv.first);
    for (const auto& kv : c.labels) keys.insert(kv.first);
  }
  std::string out = "campaign,index,kind,n,param_name,param,seed,exact,samples,skipped,skip_reason,passed,violations";
  for (const std::string& k : keys) out += "," + csv_field(k);
  out += "\n";
  for (const CellResult& c : r.cells) {
    std::string v;
    for (std::size_t i = 0; i < c.violations.size(); ++i) v += (i ? "; " : "") + c.violations[i];
    out += csv_field(r.campaign) + "," + std::to_string(c.index) + "," + csv_field(c.kind) + "," + std::to_string(c.n) +
           "," + csv_field(c.param_name) + "," + std::to_string(c.param) + "," + std::to_string(c.seed) + "," +
           (c.exact ? "true" : "false") + "," + std::to_string(c.samples) + "," + (c.skipped ? "true" : "false") +
           "," + csv_field(c.skip_reason) + "," + (c.passed ? "true" : "false") + "," + csv_field(v);
    for (const std::string& k : keys) {
      out += ",";
      if (auto it = c.values.find(k); it != c.values.end())
        out += num(it->second);
      else if (auto jt = c.labels.find(k); jt != c.labels.end())
        out += csv_field(jt->second);
    }
    out += "\n";
  }
  return out;
}

}  // namespace isoperi
