#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "itbounds/bounds.hpp"
#include "itbounds/channels.hpp"
#include "itbounds/ensembles.hpp"
#include "itbounds/errors.hpp"
#include "itbounds/solver.hpp"

namespace {

struct ToleranceOpts {
  double tail_tol = 1e-10;
  double quad_tol = 1e-10;
  double solver_tol = 1e-5;
};

void add_tolerance_flags(CLI::App* cmd, ToleranceOpts& t) {
  cmd->add_option("--tail-tol", t.tail_tol, "series tail tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--quad-tol", t.quad_tol, "quadrature absolute tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--solver-tol", t.solver_tol,
                  "root-solver tolerance on the channel parameter")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

itb::SeriesControl series_ctrl(const ToleranceOpts& t) {
  itb::SeriesControl ctrl;
  ctrl.tail_tol = t.tail_tol;
  return ctrl;
}

itb::QuadratureConfig quad_cfg(const ToleranceOpts& t) {
  itb::QuadratureConfig q;
  q.abs_tol = t.quad_tol;
  return q;
}

// Printed values must not carry more certified uncertainty than half their
// last printed digit.
void ensure_printable(double halfwidth, double half_last_digit, const char* remedy) {
  if (halfwidth > half_last_digit) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "certified uncertainty %.3e exceeds the printed precision %.1e; "
                  "tighten %s",
                  halfwidth, half_last_digit, remedy);
    throw itb::Error(msg);
  }
}

// Half-width of the Eb/N0 value induced by a parameter interval of width tol.
double ebno_halfwidth(double rate_ref, double sigma, double tol) {
  const double lo = std::max(sigma - 0.5 * tol, 1e-12);
  return 0.5 * std::abs(itb::ebno_db(rate_ref, lo) - itb::ebno_db(rate_ref, sigma + 0.5 * tol));
}

int decimals_for(double halfwidth) {
  int d = 9;
  while (d > 1 && 0.5 * std::pow(10.0, -d) < halfwidth) --d;
  return d;
}

int run_bound(const std::string& channel_spec, const std::string& ensemble_path,
              const std::string& format, const ToleranceOpts& t) {
  const itb::MbiosChannel ch = itb::parse_channel_spec(channel_spec);
  const itb::EnsembleFile ens = itb::load_ensemble(ensemble_path);
  const double rate = itb::design_rate(ens.degrees);
  const itb::CheckNodeDistribution gamma = itb::check_node_distribution(ens.degrees);
  const itb::SeriesControl ctrl = series_ctrl(t);
  const itb::QuadratureConfig q = quad_cfg(t);

  const itb::BoundReport rate_rep = itb::rate_upper_bound(ch, gamma, ctrl, q);
  const itb::BoundReport ent_rep = itb::entropy_lower_bound(ch, rate, gamma, ctrl, q);
  const double ber = itb::ber_lower_bound(ch, rate, gamma, ctrl, q);

  ensure_printable(t.quad_tol, 5e-7, "--quad-tol");
  ensure_printable(rate_rep.value_halfwidth, 5e-7, "--tail-tol");
  ensure_printable(ent_rep.value_halfwidth, 5e-7, "--tail-tol");

  if (format == "csv") {
    std::printf("quantity,value,terms,tail,note\n");
    std::printf("capacity,%.6f,,,\n", rate_rep.capacity_used);
    std::printf("design_rate,%.6f,,,\n", rate);
    std::printf("rate_upper_bound,%.6f,%ld,%.3e,\n", rate_rep.value,
                rate_rep.series_terms_used, rate_rep.tail_bound);
    std::printf("entropy_lower_bound,%.6f,%ld,%.3e,%s\n", ent_rep.value,
                ent_rep.series_terms_used, ent_rep.tail_bound,
                ent_rep.vacuous ? "vacuous" : "");
    std::printf("ber_lower_bound,%.6f,%ld,%.3e,\n", ber, ent_rep.series_terms_used,
                ent_rep.tail_bound);
  } else {
    std::printf("channel %s\n", itb::format_channel_spec(ch).c_str());
    std::printf("capacity %.6f\n", rate_rep.capacity_used);
    std::printf("design_rate %.6f\n", rate);
    std::printf("rate_upper_bound %.6f terms=%ld tail=%.3e\n", rate_rep.value,
                rate_rep.series_terms_used, rate_rep.tail_bound);
    std::printf("entropy_lower_bound %.6f terms=%ld tail=%.3e%s\n", ent_rep.value,
                ent_rep.series_terms_used, ent_rep.tail_bound,
                ent_rep.vacuous ? " vacuous" : "");
    std::printf("ber_lower_bound %.6f terms=%ld tail=%.3e\n", ber,
                ent_rep.series_terms_used, ent_rep.tail_bound);
  }
  return 0;
}

int run_threshold(const std::string& family_str, const std::string& ensemble_path,
                  const std::string& kind_str, const std::optional<double>& it_db,
                  const std::string& format, const ToleranceOpts& t) {
  const itb::ChannelFamily family = itb::parse_channel_family(family_str);
  const itb::BoundKind kind = itb::parse_bound_kind(kind_str);
  const itb::EnsembleFile ens = itb::load_ensemble(ensemble_path);
  const itb::SeriesControl ctrl = series_ctrl(t);
  const itb::QuadratureConfig q = quad_cfg(t);

  const itb::ThresholdReport rep =
      itb::threshold(family, ens.degrees, ens.pattern, kind, ctrl, q, t.solver_tol);
  const int param_dec = decimals_for(0.5 * t.solver_tol);

  std::optional<double> shannon_db;
  std::optional<double> gap_pct;
  if (rep.ebno_db) {
    ensure_printable(ebno_halfwidth(rep.rate_reference, rep.channel_param, t.solver_tol),
                     5e-4, "--solver-tol");
    shannon_db = itb::shannon_limit_ebno(rep.rate_reference, t.solver_tol, q);
    const double shannon_sigma = itb::sigma_from_ebno(*shannon_db, rep.rate_reference);
    ensure_printable(ebno_halfwidth(rep.rate_reference, shannon_sigma, t.solver_tol),
                     5e-4, "--solver-tol");
    if (it_db) {
      gap_pct = 100.0 * itb::fractional_gap(*shannon_db, *rep.ebno_db, *it_db);
    }
  } else if (it_db) {
    throw itb::InvalidArgument("--it-db requires the biawgn family");
  }

  if (format == "csv") {
    std::printf("kind,rate_reference,channel_param,ebno_db,shannon_db,residual,gap_pct\n");
    std::printf("%s,%.6f,%.*f,", itb::bound_kind_name(rep.bound_kind),
                rep.rate_reference, param_dec, rep.channel_param);
    if (rep.ebno_db) std::printf("%.3f", *rep.ebno_db);
    std::printf(",");
    if (shannon_db) std::printf("%.3f", *shannon_db);
    std::printf(",%.3e,", rep.residual);
    if (gap_pct) std::printf("%.1f", *gap_pct);
    std::printf("\n");
  } else {
    std::printf("kind %s\n", itb::bound_kind_name(rep.bound_kind));
    std::printf("rate_reference %.6f\n", rep.rate_reference);
    std::printf("channel_param %.*f\n", param_dec, rep.channel_param);
    if (rep.ebno_db) std::printf("ebno_db %.3f\n", *rep.ebno_db);
    if (shannon_db) std::printf("shannon_db %.3f\n", *shannon_db);
    std::printf("residual %.3e\n", rep.residual);
    if (gap_pct) std::printf("fractional_gap %.1f%%\n", *gap_pct);
  }
  return 0;
}

struct TableRow {
  std::string name;
  double design_rate = 0.0;
  std::optional<double> punctured;
  double capacity_db = 0.0;
  double two_level_db = 0.0;
  double unquantized_db = 0.0;
  std::optional<double> it_db;
  std::optional<double> gap_pct;
};

int run_table(const std::vector<std::string>& paths, const std::vector<double>& it_dbs,
              const std::string& format, const ToleranceOpts& t) {
  if (!it_dbs.empty() && it_dbs.size() != paths.size()) {
    throw itb::InvalidArgument("--it-db list length must match --ensembles");
  }
  const itb::SeriesControl ctrl = series_ctrl(t);
  const itb::QuadratureConfig q = quad_cfg(t);

  std::vector<TableRow> rows;
  for (size_t i = 0; i < paths.size(); ++i) {
    try {
      const itb::EnsembleFile ens = itb::load_ensemble(paths[i]);
      TableRow row;
      row.name = ens.degrees.name;
      row.design_rate = itb::design_rate(ens.degrees);
      if (ens.pattern) {
        const double node = itb::puncture_fractions(ens.degrees, *ens.pattern).node_fraction;
        row.punctured = itb::punctured_rate(row.design_rate, node);
      }
      row.capacity_db = itb::shannon_limit_ebno(row.punctured.value_or(row.design_rate),
                                                t.solver_tol, q);
      const itb::ThresholdReport two =
          itb::threshold(itb::ChannelFamily::biawgn, ens.degrees, ens.pattern,
                         itb::BoundKind::two_level, ctrl, q, t.solver_tol);
      const itb::BoundKind unq_kind =
          ens.pattern ? itb::BoundKind::punctured : itb::BoundKind::unquantized;
      const itb::ThresholdReport unq =
          itb::threshold(itb::ChannelFamily::biawgn, ens.degrees, ens.pattern, unq_kind,
                         ctrl, q, t.solver_tol);
      row.two_level_db = *two.ebno_db;
      row.unquantized_db = *unq.ebno_db;
      ensure_printable(ebno_halfwidth(two.rate_reference, two.channel_param, t.solver_tol),
                       5e-4, "--solver-tol");
      ensure_printable(ebno_halfwidth(unq.rate_reference, unq.channel_param, t.solver_tol),
                       5e-4, "--solver-tol");
      if (!it_dbs.empty()) {
        row.it_db = it_dbs[i];
        row.gap_pct = 100.0 * itb::fractional_gap(row.capacity_db, row.unquantized_db,
                                                  it_dbs[i]);
      }
      rows.push_back(std::move(row));
    } catch (const itb::Error& e) {
      throw itb::Error("table row " + std::to_string(i + 1) + " (" + paths[i] +
                       "): " + e.what());
    }
  }

  const auto opt_rate = [](const std::optional<double>& v) {
    char buf[32] = "";
    if (v) std::snprintf(buf, sizeof buf, "%.6f", *v);
    return std::string(buf);
  };
  const auto opt_db = [](const std::optional<double>& v) {
    char buf[32] = "";
    if (v) std::snprintf(buf, sizeof buf, "%.3f", *v);
    return std::string(buf);
  };
  const auto opt_pct = [](const std::optional<double>& v) {
    char buf[32] = "";
    if (v) std::snprintf(buf, sizeof buf, "%.1f", *v);
    return std::string(buf);
  };

  if (format == "csv") {
    std::printf(
        "name,design_rate,punctured_rate,capacity_db,two_level_db,unquantized_db,"
        "it_db,gap_pct\n");
    for (const TableRow& r : rows) {
      std::printf("%s,%.6f,%s,%.3f,%.3f,%.3f,%s,%s\n", r.name.c_str(), r.design_rate,
                  opt_rate(r.punctured).c_str(), r.capacity_db, r.two_level_db,
                  r.unquantized_db, opt_db(r.it_db).c_str(), opt_pct(r.gap_pct).c_str());
    }
  } else {
    const auto dash = [](std::string s) { return s.empty() ? std::string("-") : s; };
    std::printf("%-16s %11s %14s %11s %12s %14s %7s %7s\n", "name", "design_rate",
                "punctured_rate", "capacity_db", "two_level_db", "unquantized_db",
                "it_db", "gap_pct");
    for (const TableRow& r : rows) {
      char dr[32];
      std::snprintf(dr, sizeof dr, "%.6f", r.design_rate);
      char cap[32], two[32], unq[32];
      std::snprintf(cap, sizeof cap, "%.3f", r.capacity_db);
      std::snprintf(two, sizeof two, "%.3f", r.two_level_db);
      std::snprintf(unq, sizeof unq, "%.3f", r.unquantized_db);
      std::printf("%-16s %11s %14s %11s %12s %14s %7s %7s\n", r.name.c_str(), dr,
                  dash(opt_rate(r.punctured)).c_str(), cap, two, unq,
                  dash(opt_db(r.it_db)).c_str(), dash(opt_pct(r.gap_pct)).c_str());
    }
  }
  return 0;
}

int run_density(const std::string& channel_spec, const std::vector<double>& gaps,
                const std::string& format, const ToleranceOpts& t) {
  const itb::MbiosChannel ch = itb::parse_channel_spec(channel_spec);
  const itb::SeriesControl ctrl = series_ctrl(t);
  const itb::QuadratureConfig q = quad_cfg(t);
  const double cap = itb::capacity(ch, q);

  if (format == "csv") std::printf("eps_gap,target_rate,avg_degree,density\n");
  for (const double g : gaps) {
    const double avg = itb::avg_degree_lower_bound(ch, g, ctrl, q);
    const double rate = (1.0 - g) * cap;
    const double density = itb::parity_check_density(rate, avg);
    if (format == "csv") {
      std::printf("%g,%.6f,%.6f,%.6f\n", g, rate, avg, density);
    } else {
      std::printf("eps_gap %g target_rate %.6f avg_degree %.6f density %.6f\n", g, rate,
                  avg, density);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Information-theoretic bounds on achievable rate, bit error probability and "
      "parity-check density for LDPC ensembles over MBIOS channels"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "text"}))
      ->capture_default_str();

  CLI::App* bound = app.add_subcommand(
      "bound", "Evaluate rate, entropy and error-probability bounds on one channel");
  std::string bound_channel, bound_ensemble;
  ToleranceOpts bound_tols;
  bound->add_option("--channel", bound_channel, "channel spec, e.g. bsc:0.11 bec:0.4 biawgn:0.978")
      ->required();
  bound->add_option("--ensemble", bound_ensemble, "ensemble JSON file")->required();
  add_tolerance_flags(bound, bound_tols);

  CLI::App* thresh = app.add_subcommand(
      "threshold", "Solve for the channel parameter where a bound meets the design rate");
  std::string thr_family = "biawgn", thr_ensemble, thr_kind = "unquantized";
  double thr_it_db = 0.0;
  ToleranceOpts thr_tols;
  thresh->add_option("--family", thr_family, "channel family: biawgn, bsc or bec")
      ->capture_default_str();
  thresh->add_option("--ensemble", thr_ensemble, "ensemble JSON file")->required();
  thresh->add_option("--kind", thr_kind, "bound kind: unquantized, two_level or punctured")
      ->capture_default_str();
  CLI::Option* thr_it_opt =
      thresh->add_option("--it-db", thr_it_db, "iterative-decoding threshold in dB");
  add_tolerance_flags(thresh, thr_tols);

  CLI::App* table = app.add_subcommand(
      "table", "Reproduce the bound table for a list of ensembles (BIAWGN)");
  std::vector<std::string> table_paths;
  std::vector<double> table_it_dbs;
  ToleranceOpts table_tols;
  table->add_option("--ensembles", table_paths, "ensemble JSON files, one per row")
      ->required()
      ->delimiter(',');
  table->add_option("--it-db", table_it_dbs,
                    "iterative-decoding thresholds in dB, one per ensemble")
      ->delimiter(',');
  add_tolerance_flags(table, table_tols);

  CLI::App* density = app.add_subcommand(
      "density", "Lower-bound the average check degree and parity-check density");
  std::string den_channel;
  std::vector<double> den_gaps;
  ToleranceOpts den_tols;
  density->add_option("--channel", den_channel, "channel spec")->required();
  density->add_option("--gaps", den_gaps, "multiplicative gaps to capacity in (0,1)")
      ->required()
      ->delimiter(',');
  add_tolerance_flags(density, den_tols);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (bound->parsed()) return run_bound(bound_channel, bound_ensemble, format, bound_tols);
    if (thresh->parsed()) {
      std::optional<double> it_db;
      if (thr_it_opt->count() > 0) it_db = thr_it_db;
      return run_threshold(thr_family, thr_ensemble, thr_kind, it_db, format, thr_tols);
    }
    if (table->parsed()) return run_table(table_paths, table_it_dbs, format, table_tols);
    if (density->parsed()) return run_density(den_channel, den_gaps, format, den_tols);
  } catch (const itb::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
