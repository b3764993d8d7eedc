#pragma once

#include "afano/catalog.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace afano::cli {

enum Exit : int { OK = 0, MISMATCH = 1, USAGE = 2, INTERNAL = 3 };

struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& m) : std::runtime_error(m) {}
};

struct Options {
  std::string family;
  std::string config = std::string(AFANO_DATA_DIR) + "/config/default";
  std::string ledger = std::string(AFANO_DATA_DIR) + "/ledger/ledger.txt";
  std::string golden = default_golden_dir();
  std::string out;
  std::string format = "csv";
  std::string table;
  std::string case_id;
  bool no_ledger = false;
  bool all_cases = false;
};

namespace detail {

inline SweepConfig sweep_config(const Options& o) {
  SweepConfig c = SweepConfig::from(load_config(o.config), load_ledger(o.ledger));
  if (o.no_ledger) c.use_ledger = false;
  return c;
}

// Families named by --family; "all" or empty selects every family when allowed.
inline std::vector<Family> families(const std::string& sel, bool required) {
  if (sel.empty() && required) throw UsageError("--family is required");
  if (sel.empty() || sel == "all") return all_families();
  auto f = parse_family(sel);
  if (!f) throw UsageError("unknown family '" + sel + "'");
  return {*f};
}

inline Format format(const std::string& s) {
  auto f = parse_format(s);
  if (!f) throw UsageError("unsupported format '" + s + "'");
  return *f;
}

inline std::vector<CandidateCase> family_survivors(const SweepConfig& base, Family f) {
  SweepConfig c = base;
  c.family = f;
  return survivors(enumerate(c));
}

inline int cmd_enumerate(const Options& o, std::ostream& out) {
  auto fams = families(o.family, true);
  SweepConfig cfg = sweep_config(o);
  if (fams.size() == 1) cfg.family = fams.front();
  auto all = enumerate(cfg);
  out << export_candidates(o.all_cases ? all : survivors(all), format(o.format));
  return OK;
}

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  SweepConfig cfg = sweep_config(o);
  std::string summary;
  bool ok = true;
  for (Family f : families(o.family, false)) {
    auto golden = load_golden_table(o.golden, table_id(f));
    auto cands = family_survivors(cfg, f);
    DiffReport rep = diff(cands, golden);
    bool pass = rep.clean();
    ok = ok && pass;
    std::string counts = std::to_string(rep.matched_rows()) + "/" + std::to_string(rep.golden_rows);
    out << rep.table << " " << counts << " " << (pass ? "PASS" : "FAIL") << "\n";
    for (int no : rep.missing) out << "  missing " << rep.table << "-" << no << "\n";
    for (std::size_t i : rep.extra) out << "  extra " << candidate_tuple(cands[i]).str() << "\n";
    for (const auto& m : rep.mismatches) {
      out << "  nearest " << rep.table << "-" << m.row_no << " differs in";
      for (const auto& k : m.fields) out << " " << k;
      out << "\n";
    }
    for (const auto& w : rep.warnings) err << "warning: " << rep.table << "-" << w.row_no << ": " << w.text << "\n";
    if (!summary.empty()) summary += " ";
    summary += rep.table + " " + counts;
  }
  out << summary << "\n";
  return ok ? OK : MISMATCH;
}

inline void print_case(const CandidateCase& c, std::ostream& out) {
  out << "fields:\n";
  Record f = c.fields();
  for (const auto& [k, v] : f.items()) out << "  " << k << " = " << to_string(v) << "\n";
  out << "trail:\n";
  for (const auto& s : c.trail) {
    out << "  [" << (s.pass ? "pass" : "FAIL") << "] " << s.id;
    if (!s.detail.empty()) out << ": " << s.detail;
    if (s.residual) out << " (residual = " << s.residual->str() << ")";
    out << "\n";
  }
  out << "verdict: " << to_string(c.verdict.kind);
  if (!c.verdict.id.empty()) out << " " << c.verdict.id;
  out << "\n";
}

inline int cmd_explain(const Options& o, std::ostream& out) {
  auto dash = o.case_id.find('-');
  if (dash == std::string::npos) throw UsageError("case id must look like A4-5");
  std::string table = o.case_id.substr(0, dash);
  auto fam = table_family(table);
  if (!fam) throw UsageError("no enumerated family for table '" + table + "'");
  int no = 0;
  try {
    no = std::stoi(o.case_id.substr(dash + 1));
  } catch (const std::exception&) {
    throw UsageError("bad row number in '" + o.case_id + "'");
  }
  auto golden = load_golden_table(o.golden, table);
  auto row = std::find_if(golden.begin(), golden.end(), [&](const GoldenRow& g) { return g.no == no; });
  if (row == golden.end()) throw UsageError("no row " + o.case_id);

  auto cands = family_survivors(sweep_config(o), *fam);
  DiffReport rep = diff(cands, golden);
  out << row->id() << ": " << row->cell("model") << "\n";
  if (!row->parametric()) out << "golden: " << golden_tuple(*row).str() << "\n";
  int shown = 0;
  for (const auto& [rno, ci] : rep.matched) {
    if (rno != no) continue;
    out << "\ncandidate " << ++shown << "\n";
    print_case(cands[ci], out);
  }
  if (shown == 0) {
    out << "no surviving candidate matches " << row->id() << "\n";
    return MISMATCH;
  }
  return OK;
}

inline int cmd_export(const Options& o, std::ostream& out) {
  std::vector<std::string> tables;
  if (!o.table.empty()) {
    golden_header(o.table);
    tables = {o.table};
  } else {
    for (Family f : families(o.family, true)) tables.push_back(table_id(f));
  }
  Format fmt = format(o.format);
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i) out << "\n";
    out << export_golden(load_golden_table(o.golden, tables[i]), tables[i], fmt);
  }
  return OK;
}

inline int cmd_audit(const Options& o, std::ostream& out) {
  SweepConfig cfg = sweep_config(o);
  bool ok = true;
  for (Family f : families(o.family, false)) {
    AuditReport rep = audit(f, cfg);
    ok = ok && rep.complete();
    out << short_name(f) << ": survivors off " << rep.survivors_off << ", on " << rep.survivors_on << ", explained "
        << rep.explained.size() << ", gaps " << rep.gaps.size() << ", unused " << rep.unused.size() << " "
        << (rep.complete() ? "COMPLETE" : "INCOMPLETE") << "\n";
    for (const auto& it : rep.explained) out << "  " << it.ledger_id << "  " << it.candidate.fields().str() << "\n";
    for (const auto& g : rep.gaps) out << "  GAP  " << g.fields().str() << "\n";
    for (const auto& u : rep.unused) out << "  UNUSED  " << u << "\n";
  }
  return ok ? OK : MISMATCH;
}

}  // namespace detail

// Runs a command body and maps its exceptions to exit codes.
inline int guarded(const std::function<int()>& body, std::ostream& err, const std::string& help = "") {
  try {
    return body();
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return INTERNAL;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << help;
    return USAGE;
  } catch (const std::exception& e) {
    // Unreadable or malformed input files.
    err << "error: " << e.what() << "\n";
    return USAGE;
  }
}

// Arguments exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Enumerate and verify almost Fano threefolds of Picard number two", "afano"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--family", o.family, "dp, cb, bc, bp or all");
  app.add_option("--config", o.config, "sweep configuration file");
  app.add_option("--ledger", o.ledger, "exclusion ledger file");
  app.add_option("--golden", o.golden, "directory holding A1.csv .. A5.csv");
  app.add_option("--out", o.out, "write output to this file");
  app.add_option("--format", o.format, "json, csv or tex");
  app.add_flag("--no-ledger", o.no_ledger, "disable ledger exclusions");

  auto* en = app.add_subcommand("enumerate", "sweep the grid and print surviving candidates");
  en->add_flag("--all-cases", o.all_cases, "include excluded candidates");
  auto* ve = app.add_subcommand("verify", "diff survivors against the golden tables");
  auto* ex = app.add_subcommand("explain", "print the filter trail of a table row");
  ex->add_option("case", o.case_id, "row id such as A4-5")->required();
  auto* xp = app.add_subcommand("export", "write golden tables as json, csv or tex");
  xp->add_option("--table", o.table, "A1 .. A5");
  auto* au = app.add_subcommand("audit", "compare ledger-off and ledger-on survivors");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return OK;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return USAGE;
  }

  std::ostringstream buf;
  int code = guarded(
      [&] {
        if (en->parsed()) return detail::cmd_enumerate(o, buf);
        if (ve->parsed()) return detail::cmd_verify(o, buf, err);
        if (ex->parsed()) return detail::cmd_explain(o, buf);
        if (xp->parsed()) return detail::cmd_export(o, buf);
        if (au->parsed()) return detail::cmd_audit(o, buf);
        return static_cast<int>(OK);
      },
      err, app.help());
  if (code == INTERNAL || code == USAGE) return code;

  if (o.out.empty()) {
    out << buf.str();
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << o.out << "'\n";
      return USAGE;
    }
    f << buf.str();
  }
  return code;
}

}  // namespace afano::cli
