#include "yv/cli.hpp"

#include "yv/errors.hpp"
#include "yv/gen.hpp"
#include "yv/relations.hpp"
#include "yv/roots.hpp"
#include "yv/series.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>

namespace yv::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kSeriesOrder = 20;
constexpr long kZeroSumPowers = 30;
constexpr std::array<long, 5> kRemarkPowers = {3, 6, 9, 12, 15};
constexpr std::array<int, 4> kCrosscheckPowers = {3, 6, 9, 12};

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

bool selected(const std::vector<std::string>& suites, const std::string& name) {
  return std::find(suites.begin(), suites.end(), name) != suites.end();
}

VerificationReport error_report(const std::string& suite, std::optional<long> n, const std::exception& e) {
  VerificationReport r = make_report(suite, n);
  r.fail({{"error", e.what()}});
  return r;
}

json config_json(const RunConfig& c) {
  return {{"n_max", c.n_max},
          {"precision_bits", c.precision_bits},
          {"tolerance_exponent", c.tolerance_exponent},
          {"mode", to_string(c.mode)},
          {"seed", c.seed}};
}

// Folds relation results for one group, mode and n into a single report.
VerificationReport fold_relations(const std::string& suite, long n, relations::Mode mode,
                                  const std::vector<relations::RelationReport>& rr) {
  VerificationReport rep = make_report(suite, n);
  std::size_t reported = 0;
  std::string values;
  for (const auto& r : rr) {
    if (r.status == Status::fail) rep.fail(relations::to_json(r));
    if (!r.asserted) {
      ++reported;
      values += "; " + r.family + ": " + (r.residue.empty() ? r.note : r.residue);
    }
  }
  rep.note = relations::to_string(mode) + ": " + std::to_string(rr.size()) + " families, " +
             std::to_string(reported) + " reported only" + values;
  return rep;
}

struct Task {
  std::string suite;
  std::optional<long> n;
  std::function<std::vector<VerificationReport>()> run;
};

}  // namespace

VerifyResult run_verify(const RunConfig& c, const std::vector<std::string>& suites) {
  VerifyResult result;
  const long n_max = c.n_max;
  // the Wronskian at n involves Q_{n+1}
  const long gen_max = selected(suites, "remark") ? std::max(n_max + 1, kRemarkSamples) : n_max + 1;

  std::vector<gen::YvRecord> all;
  try {
    all = gen::generate(gen_max);
  } catch (const std::exception& e) {
    result.reports.push_back(error_report("generation", std::nullopt, e));
    result.overall = Status::fail;
    return result;
  }
  const std::span<const gen::YvRecord> records(all.data(), static_cast<std::size_t>(n_max) + 1);

  const bool numeric = c.mode != ModeSel::exact;
  const bool exact = c.mode != ModeSel::numeric;
  const bool any_relation =
      selected(suites, "relations") || selected(suites, "corollary") || selected(suites, "kudryashov");
  const bool need_roots =
      (numeric && any_relation) || selected(suites, "poleseries") || selected(suites, "roots");

  std::vector<roots::RootSet> root_sets(records.size());
  std::vector<std::string> root_errors(records.size());
  if (need_roots) {
    roots::SolverOptions opts;
    opts.precision_bits = c.precision_bits;
    opts.seed = c.seed;
    parallel_for(records.size(), c.jobs, [&](std::size_t i) {
      try {
        root_sets[i] = roots::compute_roots(records[i], opts);
      } catch (const std::exception& e) {
        root_errors[i] = e.what();
      }
    });
  }
  auto roots_ok = [&](long n) { return root_errors[static_cast<std::size_t>(n)].empty(); };
  auto missing_roots = [&](const std::string& suite, long n, long k) {
    VerificationReport r = make_report(suite, n);
    r.fail({{"roots_unavailable_for", k}, {"error", root_errors[static_cast<std::size_t>(k)]}});
    return r;
  };

  const double tol = static_cast<double>(c.tolerance_exponent);
  std::vector<Task> tasks;
  auto single = [&](const std::string& suite, std::optional<long> n, std::function<VerificationReport()> f) {
    tasks.push_back({suite, n, [f] { return std::vector<VerificationReport>{f()}; }});
  };

  for (const std::string& suite : suites) {
    if (suite == "structure") {
      for (long n = 0; n <= n_max; ++n) single(suite, n, [&, n] { return gen::check_structure(records[n]); });
    } else if (suite == "divisibility") {
      for (long n = 0; n <= n_max; ++n) {
        single(suite, n, [&, n] {
          VerificationReport r = gen::check_divisibility(records[n]);
          r.absorb(gen::mod4_reduction(records[n]));
          r.absorb(gen::verify_irrationality_premises(records[n]));
          return r;
        });
      }
    } else if (suite == "valuation") {
      single(suite, std::nullopt, [&] { return gen::valuation_checks(records); });
    } else if (suite == "wronskian") {
      if (n_max < 1) tasks.push_back({suite, std::nullopt, [] {
                                        return std::vector{skipped_report("wronskian", std::nullopt, "needs n >= 1")};
                                      }});
      for (long n = 1; n <= n_max; ++n) single(suite, n, [&, n] { return gen::wronskian_check(all, n); });
    } else if (suite == "pii") {
      if (n_max < 1) {
        single(suite, std::nullopt, [] { return skipped_report("pii", std::nullopt, "needs n >= 1"); });
      }
      for (long n = 1; n <= n_max; ++n) {
        single(suite, n, [&, n] {
          VerificationReport r = gen::pII_residual(gen::rational_solution(records, n));
          r.absorb(gen::pII_residual(gen::rational_solution(records, -n)));
          return r;
        });
      }
    } else if (suite == "backlund") {
      single(suite, std::nullopt, [&] {
        return n_max < 1 ? skipped_report("backlund", std::nullopt, "needs n >= 1")
                         : gen::backlund_check(records, n_max);
      });
    } else if (suite == "relations" || suite == "corollary" || suite == "kudryashov") {
      const relations::Group g = suite == "relations"   ? relations::Group::theorem
                                 : suite == "corollary" ? relations::Group::corollary
                                                        : relations::Group::kudryashov;
      if (n_max < 1) single(suite, std::nullopt, [suite] { return skipped_report(suite, std::nullopt, "needs n >= 1"); });
      for (long n = 1; n <= n_max; ++n) {
        tasks.push_back({suite, n, [&, suite, g, n] {
                           std::vector<VerificationReport> out;
                           std::optional<relations::ExactLevel> el;
                           std::optional<relations::NumericLevel> nl;
                           if (exact) {
                             el = relations::exact_level(records, n);
                             out.push_back(fold_relations(suite, n, relations::Mode::exact, relations::evaluate(*el, g)));
                           }
                           if (numeric) {
                             if (!roots_ok(n - 1) || !roots_ok(n)) {
                               out.push_back(missing_roots(suite, n, roots_ok(n - 1) ? n : n - 1));
                               return out;
                             }
                             nl = relations::numeric_level(root_sets[n - 1], root_sets[n]);
                             out.push_back(
                                 fold_relations(suite, n, relations::Mode::numeric, relations::evaluate(*nl, g, tol)));
                           }
                           if (el && nl && suite == "relations") {
                             VerificationReport a = relations::mode_agreement(*el, *nl, tol);
                             a.suite = suite;
                             a.note = "agreement: " + a.note;
                             out.push_back(std::move(a));
                           }
                           return out;
                         }});
      }
    } else if (suite == "poleseries") {
      if (n_max < 1) single(suite, std::nullopt, [] { return skipped_report("poleseries", std::nullopt, "needs n >= 1"); });
      for (long n = 1; n <= n_max; ++n) {
        single(suite, n, [&, n] {
          if (!roots_ok(n - 1)) return missing_roots("poleseries", n, n - 1);
          if (!roots_ok(n)) return missing_roots("poleseries", n, n);
          return relations::pole_series_check(root_sets[n - 1], root_sets[n], n, tol);
        });
      }
    } else if (suite == "sums") {
      tasks.push_back({suite, std::nullopt, [&] {
                         return std::vector<VerificationReport>{series::verify_closed_forms(records, n_max),
                                                                series::verify_difference_relations(records, n_max),
                                                                series::verify_zero_sums(records, n_max, kZeroSumPowers)};
                       }});
    } else if (suite == "series") {
      if (n_max < 1) single(suite, std::nullopt, [] { return skipped_report("series", std::nullopt, "needs n >= 1"); });
      for (long n = 1; n <= n_max; ++n) {
        single(suite, n, [&, n] { return series::cross_check_series(records, n, kSeriesOrder); });
      }
    } else if (suite == "remark") {
      for (long m : kRemarkPowers) {
        single(suite, std::nullopt, [&, m] { return series::verify_remark_polynomiality(all, m, gen_max); });
      }
    } else if (suite == "roots") {
      for (long n = 0; n <= n_max; ++n) {
        single(suite, n, [&, n] {
          if (!roots_ok(n)) return missing_roots("roots", n, n);
          const auto& rs = root_sets[n];
          VerificationReport r = roots::certify(rs, records[n]);
          r.suite = "roots";
          r.absorb(roots::newton_crosscheck(rs, records[n], kCrosscheckPowers, 0.2 * static_cast<double>(rs.precision_bits)));
          if (n >= 1 && roots_ok(n - 1)) {
            r.absorb(relations::derivative_identity_check(root_sets[n - 1], records[n], rs, c.seed));
          }
          return r;
        });
      }
    }
  }

  std::vector<std::vector<VerificationReport>> slots(tasks.size());
  parallel_for(tasks.size(), c.jobs, [&](std::size_t i) {
    try {
      slots[i] = tasks[i].run();
    } catch (const std::exception& e) {
      slots[i] = {error_report(tasks[i].suite, tasks[i].n, e)};
    }
  });
  for (auto& s : slots) {
    for (auto& r : s) result.reports.push_back(std::move(r));
  }
  result.overall = aggregate(result.reports);
  return result;
}

int cmd_gen(const RunConfig& c, std::ostream& out) {
  out << std::setw(4) << "n" << std::setw(8) << "degree" << std::setw(8) << "p_n" << "  x_n\n";
  try {
    gen::generate_streaming(c.n_max, [&](const gen::YvRecord& r) {
      write_file(c.output_dir / ("yv_" + std::to_string(r.n) + ".json"), gen::to_json(r).dump(2) + "\n");
      out << std::setw(4) << r.n << std::setw(8) << *r.poly.degree() << std::setw(8) << r.p_n << "  "
          << r.x_n.get_str() << '\n';
    });
  } catch (const IntegrityError& e) {
    out << "integrity failure: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

int cmd_verify(const RunConfig& c, const std::vector<std::string>& suites, std::ostream& out) {
  VerifyResult res = run_verify(c, suites);

  std::filesystem::path path;
  if (c.report_format == Format::json) {
    json reports = json::array();
    for (const auto& r : res.reports) reports.push_back(to_json(r));
    json doc{{"config", config_json(c)}, {"suites", suites}, {"overall", to_string(res.overall)}, {"reports", reports}};
    path = c.output_dir / "verify_report.json";
    write_file(path, doc.dump(2) + "\n");
  } else {
    std::string text = "suite,n,status,note,witness,elapsed_ms\n";
    for (const auto& r : res.reports) {
      text += csv_field(r.suite) + "," + (r.n ? std::to_string(*r.n) : "") + "," + to_string(r.status) + "," +
              csv_field(r.note) + "," + csv_field(r.witness.is_null() ? "" : r.witness.dump()) + "," +
              std::to_string(r.elapsed_ms) + "\n";
    }
    path = c.output_dir / "verify_report.csv";
    write_file(path, text);
  }

  std::vector<std::string> names;
  for (const auto& r : res.reports) {
    if (std::find(names.begin(), names.end(), r.suite) == names.end()) names.push_back(r.suite);
  }
  for (const auto& name : names) {
    std::size_t pass = 0, fail = 0, skipped = 0;
    for (const auto& r : res.reports) {
      if (r.suite != name) continue;
      (r.failed() ? fail : r.passed() ? pass : skipped)++;
    }
    out << std::left << std::setw(14) << name << std::right << " pass " << std::setw(4) << pass << "  fail "
        << std::setw(4) << fail << "  skipped " << std::setw(3) << skipped << '\n';
  }
  out << "overall: " << to_string(res.overall) << "  (" << path.string() << ")\n";
  return res.overall == Status::fail ? 1 : 0;
}

int cmd_roots(const RunConfig& c, std::ostream& out) {
  auto records = gen::generate(c.n_max);
  roots::SolverOptions opts;
  opts.precision_bits = c.precision_bits;
  opts.seed = c.seed;
  std::vector<std::string> lines(records.size());
  std::vector<char> failed(records.size(), 0);
  parallel_for(records.size(), c.jobs, [&](std::size_t i) {
    const auto& r = records[i];
    try {
      roots::RootSet rs = roots::compute_roots(r, opts);
      VerificationReport cert = roots::certify(rs, r);
      write_file(c.output_dir / ("roots_" + std::to_string(r.n) + ".csv"), roots::to_csv(rs));
      write_file(c.output_dir / ("roots_" + std::to_string(r.n) + ".svg"), roots::to_svg(rs));
      failed[i] = cert.failed();
      lines[i] = "n = " + std::to_string(r.n) + ": " + std::to_string(rs.roots.size()) + " roots, max residual " +
                 rs.max_residual.to_string(4) + ", certification " + to_string(cert.status);
      if (cert.failed()) lines[i] += " " + cert.witness.dump();
    } catch (const NoConvergence& e) {
      failed[i] = 1;
      lines[i] = "n = " + std::to_string(r.n) + ": no convergence after " + std::to_string(e.iterations()) +
                 " iterations (worst residual " + e.worst_residual() + ")";
    } catch (const std::exception& e) {
      failed[i] = 1;
      lines[i] = "n = " + std::to_string(r.n) + ": " + e.what();
    }
  });
  for (const auto& l : lines) out << l << '\n';
  return std::any_of(failed.begin(), failed.end(), [](char f) { return f != 0; }) ? 1 : 0;
}

int cmd_sums(const RunConfig& c, const std::vector<long>& m_list, std::ostream& out) {
  if (m_list.empty()) throw std::invalid_argument("sums: at least one m is required");
  for (long m : m_list) {
    if (m < 1) throw std::invalid_argument("sums: m must be >= 1");
  }
  const long m_max = *std::max_element(m_list.begin(), m_list.end());
  auto records = gen::generate(c.n_max);
  std::vector<series::PowerSumTable> tables(records.size());
  parallel_for(records.size(), c.jobs, [&](std::size_t i) { tables[i] = series::inverse_power_sums(records[i], m_max); });

  bool mismatch = false;
  json rows = json::array();
  std::string csv = "n,m,sum,closed_form,matches\n";
  out << std::setw(4) << "n" << std::setw(4) << "m" << "  sum  [closed form]\n";
  for (const auto& t : tables) {
    for (long m : m_list) {
      const auto& v = t.at(m);
      json row{{"n", t.n}, {"m", m}, {"sum", series::rational_string(v)}};
      std::string cf, match;
      if (auto f = series::closed_form(t.n, m)) {
        cf = series::rational_string(*f);
        match = *f == v ? "true" : "false";
        mismatch = mismatch || *f != v;
        row["closed_form"] = cf;
        row["matches"] = *f == v;
      }
      rows.push_back(row);
      csv += std::to_string(t.n) + "," + std::to_string(m) + "," + series::rational_string(v) + "," + cf + "," +
             match + "\n";
      out << std::setw(4) << t.n << std::setw(4) << m << "  " << v.get_str();
      if (!cf.empty()) out << "  [" << (match == "true" ? "ok" : "MISMATCH " + cf) << "]";
      out << '\n';
    }
  }
  if (c.report_format == Format::json) {
    write_file(c.output_dir / "sums.json", rows.dump(2) + "\n");
  } else {
    write_file(c.output_dir / "sums.csv", csv);
  }
  return mismatch ? 1 : 0;
}

}  // namespace yv::cli
