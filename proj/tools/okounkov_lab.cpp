// okounkov-lab: exact desk-scale checks for graded linear series — volumes,
// Okounkov bodies, Fujita approximation, base/multiplier ideal comparisons,
// and asymptotic valuations. One subcommand per theorem cluster.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "oklab/global_body.hpp"
#include "oklab/okounkov.hpp"
#include "oklab/reduced.hpp"
#include "oklab/report.hpp"
#include "oklab/specfile.hpp"
#include "oklab/star.hpp"
#include "oklab/valuation.hpp"

using namespace oklab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 2;
constexpr int kExitCapExceeded = 3;
constexpr int kExitSpecError = 4;

std::vector<size_t> parse_coords(const std::string& csv) {
  std::vector<size_t> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    long v = std::stol(tok);
    if (v < 1) throw SpecError({"coordinates are 1-based"});
    out.push_back(static_cast<size_t>(v - 1));
  }
  return out;
}

ExpVec parse_int_vec(const std::string& csv) {
  ExpVec out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoll(tok));
  return out;
}

std::vector<IdxVec> parse_grid(const std::string& text) {
  std::vector<IdxVec> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ';')) out.push_back(parse_int_vec(tok));
  return out;
}

std::string out_path(const std::string& dir, const std::string& file) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / file).string();
}

struct Ctx {
  std::string spec_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  std::string command_line;
};

RunManifest manifest_for(const Ctx& ctx, const std::string& caps) {
  return RunManifest::for_file(ctx.command_line, ctx.spec_path, caps, ctx.seed);
}

int run_volume(const Ctx& ctx, std::int64_t mmax) {
  SeriesSpec spec = parse_spec(ctx.spec_path);
  GradedSeries s = build_series(spec);
  mmax = mmax > 0 ? mmax : spec.cap("mmax", 60);
  VolumeReport rep = volume_report(s, spec.flag, mmax);
  RunManifest m = manifest_for(ctx, "mmax=" + std::to_string(mmax));
  save_table_csv(out_path(ctx.out_dir, spec.name + "_count.csv"), m, rep.count_estimates);
  save_table_csv(out_path(ctx.out_dir, spec.name + "_hull.csv"), m, rep.hull_estimates);
  std::cout << "series " << spec.name << " (d=" << s.dim() << ", mode " << s.describe()
            << ")\n";
  std::cout << "count estimate at m=" << rep.count_estimates.rows.back().index << ": "
            << rational_string(rep.count_estimates.last()) << " ~ "
            << decimal_string(rep.count_estimates.last()) << "\n";
  std::cout << "hull estimate: " << rational_string(rep.hull_estimates.last()) << "\n";
  std::cout << "delta_lat: " << (rep.delta_lat ? rep.delta_lat->str() : std::string("infinite"))
            << "\n";
  if (rep.normalized_target)
    std::cout << "normalized target d!vol(body)/delta_lat = "
              << rational_string(*rep.normalized_target) << "\n";
  if (s.dim() == 2) {
    std::ofstream svg(out_path(ctx.out_dir, spec.name + "_body.svg"), std::ios::binary);
    write_body_svg(svg, m, rep.body.body, spec.name + " body");
  }
  std::cout << "body exact: " << (rep.body.exact ? "yes" : "no (inner approximation)")
            << ", volume " << rational_string(volume(rep.body.body)) << "\n";
  return kExitOk;
}

int run_body(const Ctx& ctx, std::int64_t mmax) {
  SeriesSpec spec = parse_spec(ctx.spec_path);
  GradedSeries s = build_series(spec);
  mmax = mmax > 0 ? mmax : spec.cap("mmax", 60);
  OkounkovBody body = okounkov_body(s, spec.flag, mmax);
  RunManifest m = manifest_for(ctx, "mmax=" + std::to_string(mmax));
  ConvergenceTable verts;
  verts.name = "vertices";
  verts.index_label = "vertex";
  for (const auto& v : body.body.vertices) {
    std::string label;
    for (size_t i = 0; i < v.size(); ++i)
      label += (i ? ";" : "") + rational_string(v[i]);
    verts.add(label, Rational(0));
  }
  save_table_csv(out_path(ctx.out_dir, spec.name + "_body_vertices.csv"), m, verts);
  std::cout << "okounkov body of " << spec.name << ": " << body.body.vertices.size()
            << " vertices, volume " << rational_string(volume(body.body))
            << (body.exact ? " (exact)" : " (inner)") << "\n";
  std::cout << "graded-group rank " << body.lattice.rank;
  if (body.lattice.index) std::cout << ", index " << body.lattice.index->str();
  std::cout << "\n";
  if (s.dim() == 2) {
    std::ofstream svg(out_path(ctx.out_dir, spec.name + "_body.svg"), std::ios::binary);
    write_body_svg(svg, m, body.body, spec.name + " body");
  }
  return kExitOk;
}

int run_restrict(const Ctx& ctx, const std::string& coords, std::int64_t mmax) {
  SeriesSpec spec = parse_spec(ctx.spec_path);
  GradedSeries s = build_series(spec);
  std::vector<size_t> J = parse_coords(coords);
  mmax = mmax > 0 ? mmax : spec.cap("mmax", 60);
  Flag rf = Flag::identity(s.dim() - J.size());
  VolumeReport rep = restricted_volume(s, J, rf, mmax);
  RunManifest m = manifest_for(ctx, "coords=" + coords + " mmax=" + std::to_string(mmax));
  save_table_csv(out_path(ctx.out_dir, spec.name + "_restricted_count.csv"), m,
                 rep.count_estimates);
  save_table_csv(out_path(ctx.out_dir, spec.name + "_restricted_hull.csv"), m,
                 rep.hull_estimates);
  std::cout << "restricted volume of " << spec.name << " along {x_" << coords << " = 0}\n";
  std::cout << "count estimate: " << rational_string(rep.count_estimates.last()) << " ~ "
            << decimal_string(rep.count_estimates.last()) << "\n";
  std::cout << "hull estimate: " << rational_string(rep.hull_estimates.last()) << "\n";
  return kExitOk;
}

int run_fujita(const Ctx& ctx, const std::string& eps_str, std::int64_t pmax,
               std::int64_t kmax) {
  SeriesSpec spec = parse_spec(ctx.spec_path);
  GradedSeries s = build_series(spec);
  Rational eps = parse_rational(eps_str);
  pmax = pmax > 0 ? pmax : spec.cap("pmax", 10);
  kmax = kmax > 0 ? kmax : spec.cap("kmax", 12);
  FujitaReport rep = fujita_report(s, eps, pmax, kmax);
  RunManifest m = manifest_for(ctx, "eps=" + eps_str + " pmax=" + std::to_string(pmax) +
                                        " kmax=" + std::to_string(kmax));
  ConvergenceTable per_p;
  per_p.name = "fujita";
  per_p.index_label = "p";
  per_p.value_label = "achieved_epsilon";
  for (const auto& [p, limit, ref, achieved] : rep.per_p) per_p.add(p, achieved);
  save_table_csv(out_path(ctx.out_dir, spec.name + "_fujita.csv"), m, per_p);
  save_table_csv(out_path(ctx.out_dir, spec.name + "_fujita_ratios.csv"), m, rep.ratios);
  if (!rep.p0_reached) {
    std::cout << "p0 not reached within p <= " << pmax << " (best achieved epsilon "
              << rational_string(rep.achieved_epsilon) << ")\n";
    return kExitCapExceeded;
  }
  std::cout << "p0 = " << rep.p << " with limit estimate "
            << rational_string(rep.limit_estimate) << " (achieved epsilon "
            << rational_string(rep.achieved_epsilon) << ")\n";
  return kExitOk;
}

int run_multigraded(const Ctx& ctx, const std::string& eps_str, std::int64_t pmax,
                    std::int64_t box, const std::string& grid_str) {
  SeriesSpec spec = parse_spec(ctx.spec_path);
  MultiGradedSeries w = build_multigraded(spec);
  Rational eps = parse_rational(eps_str);
  pmax = pmax > 0 ? pmax : spec.cap("pmax", 8);
  box = box > 0 ? box : spec.cap("box", 24);
  std::vector<IdxVec> grid = parse_grid(grid_str);
  RunManifest m = manifest_for(ctx, "eps=" + eps_str + " pmax=" + std::to_string(pmax) +
                                        " box=" + std::to_string(box) + " grid=" + grid_str);
  GlobalBody gb = global_body(w, spec.flag, std::min<std::int64_t>(box, 8));
  ConvergenceTable fibers;
  fibers.name = "fiber_volumes";
  fibers.index_label = "a";
  for (const auto& a : grid) {
    QVec q(a.size());
    for (size_t i = 0; i < a.size(); ++i) q[i] = a[i];
    fibers.add(idx_string(a), volume(fiber_body(gb, q)));
  }
  save_table_csv(out_path(ctx.out_dir, spec.name + "_fibers.csv"), m, fibers);
  MultiFujitaReport rep = multigraded_fujita_check(w, grid, eps, pmax, box);
  ConvergenceTable table;
  table.name = "multigraded_fujita";
  table.index_label = "p;a";
  table.value_label = "dim_ratio";
  for (const auto& row : rep.table)
    table.add(std::to_string(row.p) + ";" + idx_string(row.a), row.ratio);
  save_table_csv(out_path(ctx.out_dir, spec.name + "_multifujita.csv"), m, table);
  if (!rep.p0_reached) {
    std::cout << "uniform p0 not reached within p <= " << pmax << "\n";
    return kExitCapExceeded;
  }
  std::cout << "uniform p0 = " << rep.p0 << " over " << grid.size() << " grid rays\n";
  for (const auto& [a, p] : rep.per_a_p0)
    std::cout << "  per-ray p0" << idx_string(a) << " = " << p << "\n";
  return kExitOk;
}

int run_star(const Ctx& ctx, std::int64_t pmax) {
  SeriesSpec spec = parse_spec(ctx.spec_path);
  GradedSeries s = build_series(spec);
  pmax = pmax > 0 ? pmax : spec.cap("pmax", 10);
  StarWitnessReport rep = check_star(s, pmax);
  RunManifest m = manifest_for(ctx, "pmax=" + std::to_string(pmax));
  ConvergenceTable shifts;
  shifts.name = "star_shifts";
  shifts.index_label = "p";
  shifts.value_label = "l1_norm_of_shift";
  for (const auto& [p, np] : rep.per_p_shifts) {
    std::string label = std::to_string(p);
    shifts.add(label, Rational(coord_sum(np)));
  }
  save_table_csv(out_path(ctx.out_dir, spec.name + "_star.csv"), m, shifts);
  if (s.dim() + 1 == 2) {
    MonomialIdeal b = base_ideal(s, pmax);
    std::ofstream svg(out_path(ctx.out_dir, spec.name + "_staircase.svg"), std::ios::binary);
    write_staircase_svg(svg, m, b, spec.name + " base ideal staircase");
  }
  StableBaseSupport sbs = stable_base_support(s, pmax);
  std::cout << "stable base support (tested range): {";
  for (size_t i = 0; i < sbs.support.size(); ++i)
    std::cout << (i ? "," : "") << "x_" << sbs.support[i];
  std::cout << "}, e_bar = " << sbs.e_bar << "\n";
  for (std::int64_t p : rep.impossible_p)
    std::cout << "no witness possible at p=" << p
              << " (multiplier ideal nonzero, base ideal zero)\n";
  if (rep.witness) {
    std::cout << "witness shift: (";
    for (size_t i = 0; i < rep.witness->size(); ++i)
      std::cout << (i ? "," : "") << (*rep.witness)[i];
    std::cout << ")  stabilized: " << (rep.stabilized ? "yes" : "no (tested range)")
              << "  verified: " << (rep.verified ? "yes" : "NO") << "\n";
    if (!rep.verified) return kExitCheckFailed;
    return kExitOk;
  }
  std::cout << "no witness found on the tested range\n";
  return kExitCheckFailed;
}

int run_mu(const Ctx& ctx, const std::string& coords, std::int64_t mmax,
           std::int64_t star_pmax) {
  SeriesSpec spec = parse_spec(ctx.spec_path);
  GradedSeries s = build_series(spec);
  std::vector<size_t> J = parse_coords(coords);
  mmax = mmax > 0 ? mmax : spec.cap("mmax", 60);
  star_pmax = star_pmax > 0 ? star_pmax : spec.cap("star_pmax", 8);
  MuAinReport rep = mu_equals_ain_check(s, J, mmax, star_pmax);
  RunManifest m = manifest_for(ctx, "coords=" + coords + " mmax=" + std::to_string(mmax));
  save_table_csv(out_path(ctx.out_dir, spec.name + "_mu.csv"), m, rep.mu_rows);
  save_table_csv(out_path(ctx.out_dir, spec.name + "_ain.csv"), m, rep.ain_rows);
  save_table_csv(out_path(ctx.out_dir, spec.name + "_dvol.csv"), m, rep.dvol_rows);
  std::cout << "mu = " << rational_string(rep.mu) << " ~ " << decimal_string(rep.mu) << "\n";
  std::cout << "ain = " << rational_string(rep.ain) << " ~ " << decimal_string(rep.ain) << "\n";
  std::cout << "delta*vol = " << rational_string(rep.dvol) << " ~ " << decimal_string(rep.dvol)
            << " (delta = " << rep.delta.str() << ")\n";
  std::cout << "residuals: mu-ain " << decimal_string(rep.residual_mu_ain) << ", mu-dvol "
            << decimal_string(rep.residual_mu_dvol) << ", ain-dvol "
            << decimal_string(rep.residual_ain_dvol) << "\n";
  std::cout << "mu >= ain row-wise: " << (rep.mu_ge_ain_rowwise ? "yes" : "NO") << "\n";
  return rep.mu_ge_ain_rowwise ? kExitOk : kExitCheckFailed;
}

int run_valuation(const Ctx& ctx, const std::string& weights, std::int64_t pmax) {
  SeriesSpec spec = parse_spec(ctx.spec_path);
  GradedSeries s = build_series(spec);
  pmax = pmax > 0 ? pmax : spec.cap("pmax", 12);
  MonomialValuation v{parse_int_vec(weights)};
  AsymptoticOrderReport order = asymptotic_order(s, v, pmax);
  RunManifest m = manifest_for(ctx, "weights=" + weights + " pmax=" + std::to_string(pmax));
  save_table_csv(out_path(ctx.out_dir, spec.name + "_valuation.csv"), m, order.per_p);
  std::cout << "asymptotic order infimum: " << rational_string(order.infimum) << "\n";
  ValuationChecksReport checks = valuation_checks(s, v, pmax);
  std::cout << "v-boundedness: "
            << (checks.v_bounded_applicable ? (checks.v_bounded_ok ? "ok" : "FAILED")
                                            : "not applicable (infimum nonzero)")
            << "\n";
  std::cout << "sup-ratio |sup v(J_p)/p - inf| = "
            << decimal_string(checks.sup_ratio - checks.infimum < 0
                                  ? checks.infimum - checks.sup_ratio
                                  : checks.sup_ratio - checks.infimum)
            << " within slack " << rational_string(checks.slack) << ": "
            << (checks.sup_ratio_ok ? "ok" : "FAILED") << "\n";
  bool ok = (!checks.v_bounded_applicable || checks.v_bounded_ok) && checks.sup_ratio_ok;
  return ok ? kExitOk : kExitCheckFailed;
}

int run_audit(const Ctx& ctx, std::int64_t degree) {
  SeriesSpec spec = parse_spec(ctx.spec_path, /*run_audit=*/false);
  std::int64_t cap = degree > 0 ? degree : spec.cap("audit", 10);
  if (spec.multigraded) {
    MultiGradedSeries w = build_multigraded(spec);
    w.audit_multiplicativity(std::min<std::int64_t>(cap, 6));
    std::cout << "multigraded multiplicativity audit passed up to box " << std::min<std::int64_t>(cap, 6)
              << "\n";
    return kExitOk;
  }
  GradedSeries s = build_series(spec);
  s.audit_multiplicativity(cap);
  std::cout << "multiplicativity audit passed up to degree " << cap << "\n";
  std::int64_t e = exponent(s, cap);
  std::cout << "exponent on the tested range: " << e << "\n";
  GFReport gf = gf_report(s, cap);
  std::cout << "condition (GF): " << (gf.is_gf ? "holds" : "fails") << " on the tested range";
  if (gf.is_gf)
    std::cout << " (witness degree " << gf.witness_degree << ", delta " << gf.degree->str()
              << ")";
  std::cout << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"okounkov-lab: exact checks for graded linear series at desk scale"};
  app.require_subcommand(1);

  Ctx ctx;
  for (int i = 0; i < argc; ++i) ctx.command_line += std::string(i ? " " : "") + argv[i];

  std::string coords, eps = "1/100", weights = "1,0", grid = "1,1";
  std::int64_t mmax = 0, pmax = 0, kmax = 0, box = 0, degree = 0, star_pmax = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("spec", ctx.spec_path, "series definition file")->required();
    cmd->add_option("--out", ctx.out_dir, "output directory");
    cmd->add_option("--seed", ctx.seed, "seed recorded in the manifest");
  };

  CLI::App* volume = app.add_subcommand("volume", "volume estimators and the counting law");
  add_common(volume);
  volume->add_option("--mmax", mmax, "truncation degree");

  CLI::App* body = app.add_subcommand("body", "Okounkov body vertices and lattice data");
  add_common(body);
  body->add_option("--mmax", mmax, "truncation degree");

  CLI::App* restr = app.add_subcommand("restrict", "restricted volume along coordinates");
  add_common(restr);
  restr->add_option("--coords", coords, "1-based coordinate list, e.g. 2,3")->required();
  restr->add_option("--mmax", mmax, "truncation degree");

  CLI::App* fujita = app.add_subcommand("fujita", "symmetric-power approximation degree p0");
  add_common(fujita);
  fujita->add_option("--eps", eps, "tolerance, e.g. 1/100");
  fujita->add_option("--pmax", pmax, "largest p tried");
  fujita->add_option("--kmax", kmax, "power truncation");

  CLI::App* multi = app.add_subcommand("multigraded", "global cone, fibers, uniform p0");
  add_common(multi);
  multi->add_option("--eps", eps, "tolerance");
  multi->add_option("--pmax", pmax, "largest p tried");
  multi->add_option("--box", box, "index truncation box");
  multi->add_option("--grid", grid, "integral rays, e.g. 1,3;1,1;3,1");

  CLI::App* star = app.add_subcommand("star", "base/multiplier ideal comparison witness");
  add_common(star);
  star->add_option("--pmax", pmax, "largest degree tested");

  CLI::App* mu = app.add_subcommand("mu", "reduced volume vs asymptotic intersection");
  add_common(mu);
  mu->add_option("--coords", coords, "1-based coordinate list cutting the subvariety")
      ->required();
  mu->add_option("--mmax", mmax, "truncation degree");
  mu->add_option("--star-pmax", star_pmax, "witness search range");

  CLI::App* val = app.add_subcommand("valuation", "asymptotic order and boundedness checks");
  add_common(val);
  val->add_option("--weights", weights, "homogeneous weight vector, e.g. 1,0");
  val->add_option("--pmax", pmax, "largest degree tested");

  CLI::App* audit = app.add_subcommand("audit", "multiplicativity and structure audit");
  add_common(audit);
  audit->add_option("--degree", degree, "working degree");

  CLI11_PARSE(app, argc, argv);

  try {
    if (volume->parsed()) return run_volume(ctx, mmax);
    if (body->parsed()) return run_body(ctx, mmax);
    if (restr->parsed()) return run_restrict(ctx, coords, mmax);
    if (fujita->parsed()) return run_fujita(ctx, eps, pmax, kmax);
    if (multi->parsed()) return run_multigraded(ctx, eps, pmax, box, grid);
    if (star->parsed()) return run_star(ctx, pmax);
    if (mu->parsed()) return run_mu(ctx, coords, mmax, star_pmax);
    if (val->parsed()) return run_valuation(ctx, weights, pmax);
    if (audit->parsed()) return run_audit(ctx, degree);
  } catch (const SpecError& e) {
    std::cerr << e.what() << "\n";
    return kExitSpecError;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCapExceeded;
  } catch (const AuditFailure& e) {
    std::cerr << "audit failure: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const PreconditionFailed& e) {
    std::cerr << "check refused: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitOk;
}
