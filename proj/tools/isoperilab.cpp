#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "isoperi/campaign.hpp"
#include "isoperi/errors.hpp"
#include "isoperi/io.hpp"

using namespace isoperi;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitError = 4;

IndexRange parse_range(const std::string& s, const char* flag) {
  const auto dots = s.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const unsigned long v = std::stoul(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, v};
    }
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const unsigned long lo = std::stoul(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const unsigned long hi = std::stoul(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    if (lo > hi) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw UsageError(std::string(flag) + ": expected a..b with a <= b, got '" + s + "'");
  }
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    io::write_text_file(out, text);
}

std::string sidecar_path(const std::string& out) {
  const std::string ext = ".json";
  if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0)
    return out.substr(0, out.size() - ext.size()) + ".forms.json";
  return out + ".forms.json";
}

Polytope load_polytope(const std::string& path) { return io::polytope_from_json(io::read_json_file(path)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"isoperilab: polytope isoperimetry fixtures, solvers and verification campaigns"};
  app.require_subcommand(1);

  std::string recipe, out, in, format = "json";
  auto* construct = app.add_subcommand("construct", "build a polytope from a JSON recipe");
  construct->add_option("--recipe", recipe, "recipe file, or an inline JSON object")->required();
  construct->add_option("--out", out, "polytope JSON path (closed forms go to <stem>.forms.json)")->required();

  auto* iq = app.add_subcommand("iq", "volume, surface area and iq of a polytope JSON");
  iq->add_option("--in", in, "polytope JSON")->required()->check(CLI::ExistingFile);

  PettyOptions po;
  auto* petty = app.add_subcommand("petty", "minimal surface area position");
  petty->add_option("--in", in, "polytope JSON")->required()->check(CLI::ExistingFile);
  petty->add_option("--tol", po.tol, "isotropy residual target")->capture_default_str();
  petty->add_option("--max-iter", po.max_iter, "iteration cap")->capture_default_str();
  petty->add_option("--seed", po.seed, "restart seed")->capture_default_str();
  petty->add_option("--out", out, "output path (default stdout)");

  std::size_t samples = kDefaultSamples;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  auto* spectral = app.add_subcommand("spectral", "eigenvalue certificate for an origin-symmetric polytope");
  spectral->add_option("--in", in, "polytope JSON")->required()->check(CLI::ExistingFile);
  spectral->add_option("--samples", samples, "Monte Carlo samples above n = 2")->capture_default_str();
  spectral->add_option("--seed", seed, "sampling seed")->capture_default_str();
  spectral->add_option("--workers", workers, "sampling threads")->capture_default_str();
  spectral->add_option("--out", out, "output path (default stdout)");

  std::string theorem, n_range, phi_range, beta_range, m_range;
  std::size_t trials = 0;
  auto* verify = app.add_subcommand("verify", "run a verification campaign");
  verify->add_option("--theorem", theorem, "campaign")->required()->check(CLI::IsMember({"1", "2", "spectral"}));
  verify->add_option("--n-range", n_range, "dimensions a..b (default 2..5, spectral 2..3)");
  verify->add_option("--phi-range", phi_range, "facet counts a..b (theorem 1)");
  verify->add_option("--beta-range", beta_range, "vertex counts a..b (theorem 2)");
  verify->add_option("--m-range", m_range, "slab counts a..b (spectral, default n..8)");
  verify->add_option("--trials", trials, "random trials per cell (0 = campaign default)")->capture_default_str();
  verify->add_option("--samples", samples, "Monte Carlo samples per estimate")->capture_default_str();
  verify->add_option("--seed", seed, "campaign seed")->capture_default_str();
  verify->add_option("--workers", workers, "cell worker threads")->capture_default_str();
  verify->add_option("--out", out, "report path (default stdout)");
  verify->add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* report = app.add_subcommand("report", "re-serialize a JSON campaign report");
  report->add_option("--in", in, "campaign report JSON")->required();
  report->add_option("--format", format, "json or csv")->capture_default_str();
  report->add_option("--out", out, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*construct) {
      const io::Json r = recipe.find('{') != std::string::npos && recipe.find_first_not_of(" \t\n") == recipe.find('{')
                             ? io::parse_json(recipe, "--recipe")
                             : io::read_json_file(recipe);
      const Construction c = io::build_recipe(r);
      io::write_text_file(out, io::dump(io::polytope_to_json(c.body)));
      io::write_text_file(sidecar_path(out), io::dump(io::to_json(c.forms)));
      std::cout << io::dump(io::to_json(c.forms));
      return 0;
    }
    if (*iq) {
      const Polytope p = load_polytope(in);
      io::Json j{{"dim", p.dim()},
                 {"volume", p.volume()},
                 {"surface_area", p.surface_area()},
                 {"iq", p.iq()},
                 {"facet_count", p.facet_count()},
                 {"vertex_count", p.vertex_count()},
                 {"origin_symmetric", p.origin_symmetric()}};
      if (p.origin_interior()) j["inradius"] = inradius_origin(p);
      std::cout << io::dump(j);
      return 0;
    }
    if (*petty) {
      const Polytope p = load_polytope(in);
      const PositionResult r = petty_minimize(p, po);
      const io::Json j{{"position", io::to_json(r)}, {"schatten", io::to_json(schatten_bound_check(p, r))}};
      emit(out, io::dump(j));
      return r.certified ? 0 : kExitFail;
    }
    if (*spectral) {
      const Polytope p = load_polytope(in);
      const SpectralCertificate c = spectral_certificate(p.hrep(), samples, seed, workers);
      emit(out, io::dump(io::to_json(c)));
      return c.passed ? 0 : kExitFail;
    }
    if (*verify) {
      CampaignOptions opt;
      if (theorem == "spectral") opt.n_range = {2, 3};
      if (!n_range.empty()) opt.n_range = parse_range(n_range, "--n-range");
      if (!phi_range.empty()) opt.phi_range = parse_range(phi_range, "--phi-range");
      if (!beta_range.empty()) opt.beta_range = parse_range(beta_range, "--beta-range");
      if (!m_range.empty()) opt.m_range = parse_range(m_range, "--m-range");
      opt.trials = trials;
      opt.samples = samples;
      opt.seed = seed;
      opt.workers = workers;
      const CampaignReport rep = theorem == "1"   ? verify_theorem1(opt)
                                 : theorem == "2" ? verify_theorem2(opt)
                                                  : verify_spectral(opt);
      emit(out, format == "csv" ? report_to_csv(rep) : io::dump(report_to_json(rep)));
      std::size_t failed = 0;
      for (const CellResult& c : rep.cells) failed += c.passed ? 0 : 1;
      std::fprintf(stderr, "%s: %zu cells, %zu failed, %.2f s\n", rep.campaign.c_str(), rep.cells.size(), failed,
                   rep.wall_seconds);
      return rep.passed() ? 0 : kExitFail;
    }
    if (*report) {
      if (format != "json" && format != "csv") throw UsageError("--format: unknown format '" + format + "'");
      const CampaignReport rep = report_from_json(io::read_json_file(in));
      emit(out, format == "csv" ? report_to_csv(rep) : io::dump(report_to_json(rep)));
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}
