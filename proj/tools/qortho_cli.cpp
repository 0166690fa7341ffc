// Command-line front end: config-driven construction, verification sweeps,
// diagnostics emission, and flow-field sampling. Links the C API only.
//
// Exit codes: 0 ok, 1 check failure, 2 usage/config error, 3 numerical
// failure (the failing n is part of the message).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qortho/qortho.h"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

int exit_code_for(qo_status s) {
  switch (s) {
    case QO_OK:
      return 0;
    case QO_ERR_INVALID_ARGUMENT:
    case QO_ERR_INVALID_MEASURE:
    case QO_ERR_DEGENERATE_DENOMINATOR:
    case QO_ERR_BRANCH_CUT:
    case QO_ERR_ON_INTERVAL:
    case QO_ERR_NOT_APPLICABLE:
    case QO_ERR_PRIMITIVE_MISMATCH:
      return 2;
    default:
      return 3;
  }
}

[[noreturn]] void die(int code, const std::string& msg) {
  std::fprintf(stderr, "error: %s\n", msg.c_str());
  std::exit(code);
}

void check(qo_status st, const std::string& context) {
  if (st == QO_OK) return;
  die(exit_code_for(st), context + ": " + qo_last_error());
}

struct MeasureCfg {
  double alpha = 0.0;
  double beta = 0.0;
  double rho_lead = 1.0;
  std::vector<double> roots;  // interleaved (re, im)
  int m = 0;
};

struct Config {
  MeasureCfg measure;
  double zeta_re = 3.5;
  double zeta_im = 0.0;
  std::vector<double> zeta_seq;  // empty: constant zeta
  int n_max = 0;
  unsigned seed = 0;
  fs::path output_dir = "out";
  qo_verify_options verify{0, 1e-8, 1e-8, 1e-9, 1e-7, 1e-9, 1e-8, 1};
  // asymptotics
  std::vector<std::complex<double>> z_list{{5.0, 0.0}};
  std::vector<int> n_list{25, 50, 100, 200};
  // zeros
  double zeros_band = 0.15;
  int ellipse_points = 256;
  // flow
  int flow_n = -1;
  double grid_re0 = -2.0, grid_re1 = 2.0, grid_im0 = -2.0, grid_im1 = 2.0;
  int grid_nre = 50, grid_nim = 50;
};

double require_positive(const std::string& key, double v) {
  if (!(v > 0.0)) die(2, "config: tolerance '" + key + "' must be positive");
  return v;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) die(2, "config file not found: " + path);
  ordered_json cfg;
  try {
    cfg = ordered_json::parse(in);
  } catch (const std::exception& e) {
    die(2, "config parse failure: " + std::string(e.what()));
  }

  Config c;
  try {
    const auto& ms = cfg.at("measure");
    c.measure.alpha = ms.at("alpha").get<double>();
    c.measure.beta = ms.at("beta").get<double>();
    c.measure.rho_lead = ms.value("rho_lead", 1.0);
    if (ms.contains("rho_roots")) {
      for (const auto& r : ms.at("rho_roots")) {
        if (!r.is_array() || r.size() != 2)
          die(2, "config: rho_roots entries must be [re, im] pairs");
        c.measure.roots.push_back(r.at(0).get<double>());
        c.measure.roots.push_back(r.at(1).get<double>());
      }
    }
    c.measure.m = static_cast<int>(c.measure.roots.size() / 2);
    if (ms.contains("m") && ms.at("m").get<int>() != c.measure.m)
      die(2, "config: measure.m disagrees with the rho_roots count");

    c.n_max = cfg.at("n_max").get<int>();
    if (c.n_max < c.measure.m + 1) die(2, "config: n_max must be at least m+1");

    if (cfg.contains("zeta")) {
      const auto& z = cfg.at("zeta");
      if (z.is_number()) {
        c.zeta_re = z.get<double>();
      } else if (z.is_array() && z.size() == 2) {
        c.zeta_re = z.at(0).get<double>();
        c.zeta_im = z.at(1).get<double>();
      } else if (z.is_object() && z.contains("file")) {
        std::ifstream zf(z.at("file").get<std::string>());
        if (!zf) die(2, "config: zeta sequence file not found");
        double re, im;
        std::string line;
        while (std::getline(zf, line)) {
          if (line.empty()) continue;
          im = 0.0;
          if (std::sscanf(line.c_str(), "%lf %lf", &re, &im) < 1)
            die(2, "config: malformed zeta sequence line: " + line);
          c.zeta_seq.push_back(re);
          c.zeta_seq.push_back(im);
        }
        if (static_cast<int>(c.zeta_seq.size()) < 2 * c.n_max)
          die(2, "config: zeta sequence shorter than n_max");
        c.zeta_seq.resize(static_cast<std::size_t>(2 * c.n_max));
      } else {
        die(2, "config: zeta must be a number, [re, im], or {\"file\": path}");
      }
    }

    c.seed = cfg.value("seed", 0u);
    c.output_dir = cfg.value("output_dir", std::string("out"));

    if (cfg.contains("tolerances")) {
      const auto& t = cfg.at("tolerances");
      auto tol = [&](const char* key, double dflt) {
        return t.contains(key)
                   ? require_positive(key, t.at(key).get<double>())
                   : dflt;
      };
      c.verify.tol_ode = tol("ode", c.verify.tol_ode);
      c.verify.tol_orthogonality =
          tol("orthogonality", c.verify.tol_orthogonality);
      c.verify.tol_tail = tol("tail", c.verify.tol_tail);
      c.verify.tol_recurrence = tol("recurrence", c.verify.tol_recurrence);
      c.verify.tol_recurrence_exact =
          tol("recurrence_exact", c.verify.tol_recurrence_exact);
      c.verify.tol_window = tol("window", c.verify.tol_window);
    }
    c.verify.interlacing = cfg.value("interlacing", true) ? 1 : 0;

    if (cfg.contains("asymptotics")) {
      const auto& a = cfg.at("asymptotics");
      if (a.contains("z")) {
        c.z_list.clear();
        for (const auto& z : a.at("z")) {
          if (!z.is_array() || z.size() != 2)
            die(2, "config: asymptotics.z entries must be [re, im] pairs");
          c.z_list.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        }
      }
      if (a.contains("n")) c.n_list = a.at("n").get<std::vector<int>>();
    }

    if (cfg.contains("zeros")) {
      const auto& z = cfg.at("zeros");
      c.zeros_band = z.value("band", c.zeros_band);
      c.ellipse_points = z.value("ellipse_points", c.ellipse_points);
      if (!(c.zeros_band > 0.0) || c.ellipse_points < 2)
        die(2, "config: zeros.band must be positive, ellipse_points >= 2");
    }

    if (cfg.contains("flow")) {
      const auto& f = cfg.at("flow");
      c.flow_n = f.value("n", -1);
      if (f.contains("grid")) {
        const auto& g = f.at("grid");
        c.grid_re0 = g.value("re_min", c.grid_re0);
        c.grid_re1 = g.value("re_max", c.grid_re1);
        c.grid_im0 = g.value("im_min", c.grid_im0);
        c.grid_im1 = g.value("im_max", c.grid_im1);
        c.grid_nre = g.value("nre", c.grid_nre);
        c.grid_nim = g.value("nim", c.grid_nim);
        if (c.grid_nre < 1 || c.grid_nim < 1)
          die(2, "config: flow.grid resolution must be at least 1x1");
      }
    }
  } catch (const std::exception& e) {
    die(2, "config: " + std::string(e.what()));
  }
  return c;
}

struct Handles {
  qo_measure* meas = nullptr;
  qo_family* fam = nullptr;
  ~Handles() {
    if (fam) qo_family_destroy(fam);
    if (meas) qo_measure_destroy(meas);
  }
};

void open_family(const Config& c, Handles& h) {
  check(qo_measure_create(c.measure.alpha, c.measure.beta, c.measure.rho_lead,
                          c.measure.roots.empty() ? nullptr
                                                  : c.measure.roots.data(),
                          c.measure.m, &h.meas),
        "measure");
  check(qo_family_create(h.meas, c.n_max, c.zeta_re, c.zeta_im,
                         c.zeta_seq.empty() ? nullptr : c.zeta_seq.data(),
                         c.seed, &h.fam),
        "family");
  int nw = 0;
  qo_family_warning_count(h.fam, &nw);
  for (int i = 0; i < nw; ++i)
    std::fprintf(stderr, "warning: %s\n", qo_family_warning(h.fam, i));
}

void apply_fault(qo_family* fam, const std::string& fault) {
  if (fault.empty()) return;
  int n = 0, k = 0;
  double delta = 0.0;
  if (std::sscanf(fault.c_str(), "%d,%d,%lf", &n, &k, &delta) != 3)
    die(2, "--inject-b-fault expects n,k,delta");
  check(qo_family_corrupt_b(fam, n, k, delta), "fault injection");
}

FILE* open_csv(const fs::path& p) {
  FILE* f = std::fopen(p.string().c_str(), "w");
  if (!f) die(2, "cannot open output file: " + p.string());
  return f;
}

void write_json(const fs::path& p, const ordered_json& j) {
  std::ofstream out(p);
  if (!out) die(2, "cannot open output file: " + p.string());
  out << j.dump(2) << '\n';
}

std::string z_label(std::complex<double> z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "z=%g%+gi", z.real(), z.imag());
  return buf;
}

// ---- commands ----------------------------------------------------------

int cmd_build(const Config& c, const std::string& fault) {
  Handles h;
  open_family(c, h);
  apply_fault(h.fam, fault);
  const int m = c.measure.m;
  constexpr int kCoeffCap = 40;

  ordered_json records = ordered_json::array();
  for (int n = 1; n <= c.n_max; ++n) {
    const std::string at = "record n=" + std::to_string(n);
    ordered_json rec;
    rec["n"] = n;
    double lam = 0.0;
    check(qo_family_lambda(h.fam, n, &lam), at);
    rec["lambda"] = lam;
    double zr = 0.0, zi = 0.0;
    check(qo_family_zeta(h.fam, n, &zr, &zi), at);
    rec["zeta"] = {zr, zi};
    std::vector<double> b(static_cast<std::size_t>(std::min(m, n) + 1));
    check(qo_family_b_row(h.fam, n, b.data()), at);
    rec["b"] = b;
    if (n <= kCoeffCap) {
      if (n > m) {
        std::vector<double> qh(static_cast<std::size_t>(n + 1));
        check(qo_family_qhat_coeffs(h.fam, n, qh.data()), at);
        rec["qhat_coeffs"] = qh;
      }
      std::vector<double> qre(static_cast<std::size_t>(n + 1));
      std::vector<double> qim(static_cast<std::size_t>(n + 1));
      check(qo_family_q_coeffs(h.fam, n, qre.data(), qim.data()), at);
      ordered_json qc = ordered_json::array();
      for (int i = 0; i <= n; ++i)
        qc.push_back({qre[static_cast<std::size_t>(i)],
                      qim[static_cast<std::size_t>(i)]});
      rec["q_coeffs"] = qc;
    }
    ordered_json res;
    if (n > m && n <= kCoeffCap) {
      double ode = 0.0, orth = 0.0;
      check(qo_family_ode_residual(h.fam, n, &ode), at);
      check(qo_family_orthogonality_residual(h.fam, n, &orth), at);
      res["ode"] = ode;
      res["orth"] = orth;
    } else {
      res["ode"] = nullptr;
      res["orth"] = nullptr;
    }
    rec["residuals"] = res;
    records.push_back(rec);
  }

  ordered_json out;
  out["version"] = qo_version();
  out["measure"] = {{"alpha", c.measure.alpha},
                    {"beta", c.measure.beta},
                    {"m", m},
                    {"rho_lead", c.measure.rho_lead}};
  out["n_max"] = c.n_max;
  out["seed"] = c.seed;
  out["records"] = records;

  fs::create_directories(c.output_dir);
  const fs::path p = c.output_dir / "records.json";
  write_json(p, out);
  std::printf("wrote %s (%d records)\n", p.string().c_str(), c.n_max);
  return 0;
}

int cmd_verify(const Config& c, const std::string& fault) {
  Handles h;
  open_family(c, h);
  apply_fault(h.fam, fault);

  qo_check_result results[16];
  int count = 0;
  check(qo_verify(h.fam, &c.verify, results, 16, &count), "verify");

  bool all_pass = true;
  ordered_json checks = ordered_json::array();
  for (int i = 0; i < count; ++i) {
    const qo_check_result& r = results[i];
    const bool applicable = r.applicable != 0;
    const bool pass = r.pass != 0;
    if (applicable && !pass) all_pass = false;
    checks.push_back({{"name", r.name},
                      {"applicable", applicable},
                      {"pass", pass},
                      {"worst", r.worst},
                      {"tolerance", r.tolerance},
                      {"detail", r.detail}});
    std::printf("%-4s %-18s worst=%.3e tol=%.1e %s\n",
                !applicable ? "n/a" : (pass ? "PASS" : "FAIL"), r.name,
                r.worst, r.tolerance, r.detail);
  }

  ordered_json report;
  report["n_max"] = c.verify.n_max > 0 ? c.verify.n_max : c.n_max;
  report["checks"] = checks;
  report["all_pass"] = all_pass;
  fs::create_directories(c.output_dir);
  const fs::path p = c.output_dir / "verify_report.json";
  write_json(p, report);
  std::printf("wrote %s\n", p.string().c_str());
  return all_pass ? 0 : 1;
}

int cmd_asymptotics(const Config& c) {
  std::vector<int> ns;
  for (int n : c.n_list) {
    if (n >= 1 && n <= c.n_max)
      ns.push_back(n);
    else
      std::fprintf(stderr, "warning: dropping n=%d outside 1..n_max\n", n);
  }
  if (ns.empty()) die(2, "asymptotics: no usable n in the list");

  Handles h;
  open_family(c, h);

  // Reject z on the cut before any sweep runs.
  for (const auto& z : c.z_list) {
    double eta, delta, big;
    check(qo_geometry(z.real(), z.imag(), &eta, &delta, &big),
          "asymptotics " + z_label(z));
  }

  fs::create_directories(c.output_dir);
  const fs::path p = c.output_dir / "asymptotics.csv";
  FILE* f = open_csv(p);
  std::fprintf(f, "n,quantity,value,target,abs_error\n");

  const std::size_t count = ns.size();
  std::vector<double> ratio(12 * count);
  std::vector<double> root(3 * count);
  for (const auto& z : c.z_list) {
    const std::string label = z_label(z);
    check(qo_ratio_diagnostic(h.fam, ns.data(), static_cast<int>(count),
                              z.real(), z.imag(), ratio.data()),
          "asymptotics " + label);
    check(qo_nth_root_diagnostic(h.fam, ns.data(), static_cast<int>(count),
                                 z.real(), z.imag(), root.data()),
          "asymptotics " + label);
    double ext_re = 0.0, ext_im = 0.0;
    check(qo_exterior_limit(h.meas, z.real(), z.imag(), &ext_re, &ext_im),
          "asymptotics " + label);
    const double ext_abs = std::hypot(ext_re, ext_im);

    for (std::size_t i = 0; i < count; ++i) {
      const double* r = &ratio[12 * i];
      const int n = ns[i];
      if (r[9] != 0.0) {
        std::fprintf(f, "%d,qhat_over_p(%s),%.17g,%.17g,%.17g\n", n,
                     label.c_str(), std::hypot(r[0], r[1]), ext_abs, r[2]);
        std::fprintf(f, "%d,q_over_p(%s),%.17g,%.17g,%.17g\n", n,
                     label.c_str(), std::hypot(r[3], r[4]), ext_abs, r[5]);
      }
      if (r[10] != 0.0) {
        double zr, zi, ir = 0.0, ii = 0.0;
        check(qo_family_zeta(h.fam, n, &zr, &zi), "asymptotics");
        check(qo_interior_limit(h.meas, zr, zi, &ir, &ii), "asymptotics");
        std::fprintf(f, "%d,q_interior(%s),%.17g,%.17g,%.17g\n", n,
                     label.c_str(), std::hypot(r[6], r[7]),
                     std::hypot(ir, ii), r[8]);
      }
      std::fprintf(f, "%d,nth_root(%s),%.17g,%.17g,%.17g\n", n, label.c_str(),
                   root[3 * i], root[3 * i + 1], root[3 * i + 2]);
    }
  }
  std::fclose(f);
  std::printf("wrote %s\n", p.string().c_str());
  return 0;
}

int cmd_zeros(const Config& c, int n_arg) {
  const int n = n_arg > 0 ? n_arg : c.n_max;
  if (n > c.n_max) die(2, "zeros: n exceeds n_max");

  Handles h;
  open_family(c, h);

  std::vector<double> zre(static_cast<std::size_t>(n));
  std::vector<double> zim(static_cast<std::size_t>(n));
  std::vector<int> cls(static_cast<std::size_t>(n));
  int counts[3] = {0, 0, 0};
  double stats[4] = {0, 0, 0, 0};
  check(qo_zero_report(h.fam, n, c.zeros_band, c.seed, zre.data(), zim.data(),
                       cls.data(), counts, stats),
        "zeros n=" + std::to_string(n));

  fs::create_directories(c.output_dir);
  const fs::path pz = c.output_dir / ("zeros_n" + std::to_string(n) + ".csv");
  FILE* f = open_csv(pz);
  std::fprintf(f, "re,im,class\n");
  static const char* kClassName[3] = {"interval", "ellipse", "stray"};
  for (int i = 0; i < n; ++i)
    std::fprintf(f, "%.17g,%.17g,%s\n", zre[static_cast<std::size_t>(i)],
                 zim[static_cast<std::size_t>(i)],
                 kClassName[cls[static_cast<std::size_t>(i)]]);
  std::fclose(f);

  double zr = 0.0, zi = 0.0;
  check(qo_family_zeta(h.fam, n, &zr, &zi), "zeros");
  std::vector<double> ell(static_cast<std::size_t>(2 * c.ellipse_points));
  check(qo_ellipse_points(zr, zi, c.ellipse_points, ell.data()), "ellipse");
  const fs::path pe = c.output_dir / "ellipse.csv";
  FILE* g = open_csv(pe);
  std::fprintf(g, "re,im\n");
  for (int i = 0; i < c.ellipse_points; ++i)
    std::fprintf(g, "%.17g,%.17g\n", ell[static_cast<std::size_t>(2 * i)],
                 ell[static_cast<std::size_t>(2 * i + 1)]);
  std::fclose(g);

  std::printf(
      "wrote %s and %s (interval %d, ellipse %d, stray %d; max stray "
      "distance %.3e)\n",
      pz.string().c_str(), pe.string().c_str(), counts[0], counts[1],
      counts[2], stats[3]);
  return 0;
}

int cmd_flow(const Config& c, int n_arg, bool exploratory) {
  int n = n_arg > 0 ? n_arg : c.flow_n;
  if (n <= 0) die(2, "flow: pass --n or set flow.n in the config");
  if (n > c.n_max) die(2, "flow: n exceeds n_max");

  Handles h;
  open_family(c, h);

  qo_flow* flow = nullptr;
  check(qo_flow_create(h.fam, n, exploratory ? 1 : 0, &flow),
        "flow n=" + std::to_string(n));
  struct FlowGuard {
    qo_flow* f;
    ~FlowGuard() { qo_flow_destroy(f); }
  } guard{flow};

  int n_sources = 0, n_stag = 0;
  check(qo_flow_counts(flow, &n_sources, &n_stag), "flow");
  std::vector<double> sources(static_cast<std::size_t>(std::max(1, n_sources)));
  std::vector<double> stagnation(static_cast<std::size_t>(std::max(1, n_stag)));
  check(qo_flow_sources(flow, sources.data()), "flow");
  check(qo_flow_stagnation(flow, stagnation.data()), "flow");

  double far = 0.0;
  check(qo_flow_far_field(flow, &far), "flow far field");
  const double far_target = n + 1.0 + c.measure.alpha + c.measure.beta;

  ordered_json residues = ordered_json::array();
  for (int i = 0; i < n_sources; ++i) {
    double rr = 0.0, ri = 0.0;
    check(qo_flow_residue(flow, i, &rr, &ri), "flow residue");
    residues.push_back({{"source", sources[static_cast<std::size_t>(i)]},
                        {"value", {rr, ri}}});
  }

  double max_speed = 0.0, median = 0.0, ratio = 0.0;
  check(qo_flow_stagnation_check(flow, &max_speed, &median, &ratio),
        "flow stagnation check");
  double cross = 0.0;
  check(qo_flow_cross_check(flow, &cross), "flow cross check");

  std::vector<double> numer(static_cast<std::size_t>(std::max(1, n)));
  std::vector<double> unmatched(static_cast<std::size_t>(std::max(1, n)));
  int n_numer = 0, n_unmatched = 0;
  check(qo_flow_numerator_roots(flow, numer.data(), &n_numer,
                                unmatched.data(), &n_unmatched),
        "flow numerator roots");
  numer.resize(static_cast<std::size_t>(n_numer));
  unmatched.resize(static_cast<std::size_t>(n_unmatched));

  const std::size_t rows =
      static_cast<std::size_t>(c.grid_nre) * static_cast<std::size_t>(c.grid_nim);
  std::vector<double> field(5 * rows);
  check(qo_flow_sample(flow, c.grid_re0, c.grid_re1, c.grid_nre, c.grid_im0,
                       c.grid_im1, c.grid_nim, field.data()),
        "flow sample");

  fs::create_directories(c.output_dir);
  const fs::path pf =
      c.output_dir / ("flow_field_n" + std::to_string(n) + ".csv");
  FILE* f = open_csv(pf);
  std::fprintf(f, "re,im,v_re,v_im,v_abs\n");
  for (std::size_t i = 0; i < rows; ++i) {
    const double* r = &field[5 * i];
    if (std::isnan(r[2]))
      std::fprintf(f, "%.17g,%.17g,,,\n", r[0], r[1]);
    else
      std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r[0], r[1], r[2],
                   r[3], r[4]);
  }
  std::fclose(f);

  ordered_json report;
  report["n"] = n;
  report["alpha"] = c.measure.alpha;
  report["beta"] = c.measure.beta;
  report["sources"] = sources;
  report["stagnation"] = stagnation;
  report["far_field"] = {{"value", far},
                         {"target", far_target},
                         {"abs_error", std::abs(far - far_target)}};
  report["residues"] = residues;
  report["stagnation_check"] = {{"max_speed", max_speed},
                                {"grid_median", median},
                                {"ratio", ratio}};
  report["cross_check"] = cross;
  report["numerator_roots"] = {{"roots", numer}, {"unmatched", unmatched}};
  const fs::path pj = c.output_dir / ("flow_n" + std::to_string(n) + ".json");
  write_json(pj, report);

  std::printf("wrote %s (%zu rows) and %s\n", pf.string().c_str(), rows,
              pj.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orthogonal family construction, verification, and "
               "diagnostics for a Jacobi operator paired with a modified "
               "Jacobi measure"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_override;
  std::string fault;
  int n_arg = -1;
  unsigned seed = 0;
  bool seed_set = false;
  bool exploratory = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Config JSON path")->required();
    sub->add_option("--out", out_override, "Override output directory");
    sub->add_option("--seed", seed, "Override the config seed")
        ->each([&](const std::string&) { seed_set = true; });
    sub->add_option("--inject-b-fault", fault,
                    "Test hook: corrupt b_{n,n-k} by delta (format n,k,delta)")
        ->group("");
    return sub;
  };

  CLI::App* sub_build = add_common(app.add_subcommand(
      "build", "Construct the family and write per-n records"));
  CLI::App* sub_verify = add_common(app.add_subcommand(
      "verify", "Run the invariant suite and write a report"));
  CLI::App* sub_asym = add_common(app.add_subcommand(
      "asymptotics", "Ratio and nth-root diagnostics CSV"));
  CLI::App* sub_zeros = add_common(app.add_subcommand(
      "zeros", "Zero scatter with classification, plus the ellipse polyline"));
  CLI::App* sub_flow = add_common(app.add_subcommand(
      "flow", "Sample the hydrodynamic flow field"));
  sub_zeros->add_option("--n", n_arg, "Degree (default n_max)");
  sub_flow->add_option("--n", n_arg, "Degree");
  sub_flow->add_flag("--exploratory", exploratory,
                     "Allow measures with m != 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  Config cfg = load_config(config_path);
  if (!out_override.empty()) cfg.output_dir = out_override;
  if (seed_set) cfg.seed = seed;

  if (app.got_subcommand(sub_build)) return cmd_build(cfg, fault);
  if (app.got_subcommand(sub_verify)) return cmd_verify(cfg, fault);
  if (app.got_subcommand(sub_asym)) return cmd_asymptotics(cfg);
  if (app.got_subcommand(sub_zeros)) return cmd_zeros(cfg, n_arg);
  if (app.got_subcommand(sub_flow)) return cmd_flow(cfg, n_arg, exploratory);
  return 2;
}
