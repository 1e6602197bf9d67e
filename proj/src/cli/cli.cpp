#include "grtk/cli/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "grtk/cli/suites.hpp"

namespace grtk::cli {

namespace {

using json = nlohmann::ordered_json;

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string text_field(const json& v) {
  if (v.is_null()) return "-";
  return csv_field(v);
}

std::string render_json(const Report& r) {
  json doc;
  doc["command"] = r.command;
  doc["config"] = r.config;
  doc["ok"] = r.ok;
  doc["rows"] = r.rows;
  return doc.dump(2) + "\n";
}

std::string render_csv(const Report& r) {
  std::ostringstream out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? "," : "") << r.columns[i];
  out << "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < r.columns.size(); ++i) {
      const auto it = row.find(r.columns[i]);
      out << (i ? "," : "") << csv_quote(it == row.end() ? std::string() : csv_field(*it));
    }
    out << "\n";
  }
  return out.str();
}

std::string render_text(const Report& r) {
  std::vector<std::vector<std::string>> cells{r.columns};
  for (const auto& row : r.rows) {
    std::vector<std::string> line;
    for (const auto& col : r.columns) {
      const auto it = row.find(col);
      line.push_back(it == row.end() ? "-" : text_field(*it));
    }
    cells.push_back(line);
  }
  // width counts code points so names like "size ≤ 4" still line up
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char ch) { return (ch & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> widths(r.columns.size(), 0);
  for (const auto& line : cells)
    for (std::size_t i = 0; i < line.size(); ++i) widths[i] = std::max(widths[i], width(line[i]));
  std::ostringstream out;
  out << r.command;
  for (const auto& [k, v] : r.config.items()) out << " " << k << "=" << text_field(v);
  out << "\n";
  for (const auto& line : cells) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << line[i];
      if (i + 1 < line.size()) out << std::string(widths[i] - width(line[i]) + 2, ' ');
    }
    out << "\n";
  }
  out << (r.ok ? "status: ok" : "status: FAILED") << "\n";
  return out.str();
}

void add_common(CLI::App* sub, JobConfig& cfg, std::string& format) {
  sub->add_option("--format", format, "Output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  sub->add_option("--jobs", cfg.jobs, "Worker threads for independent cells")->check(CLI::PositiveNumber);
}

}  // namespace

std::string csv_field(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_string(); })) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : "; ") + x.get<std::string>();
    return s;
  }
  return v.dump();
}

std::string render(const Report& r, Format f) {
  switch (f) {
    case Format::Csv: return render_csv(r);
    case Format::Text: return render_text(r);
    case Format::Json: break;
  }
  return render_json(r);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  JobConfig cfg;
  CLI::App app{"Exact computations around the Grothendieck-Teichmüller Lie algebra", "grtk"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  auto* dims = app.add_subcommand("grt-dims", "Dimensions and bases of grt, weight by weight");
  dims->add_option("--max-weight", cfg.max_weight, "Largest weight")->capture_default_str();
  dims->add_flag("--class-test", cfg.class_test, "Also run the cohomology class test on every basis element");
  dims->add_option("--arity-window", cfg.arity_window, "Arity window of the cocycle test")->capture_default_str();

  auto* cls = app.add_subcommand("grt-class-test", "Cohomology class test of one grt element");
  int class_weight = 3;  // the first weight where grt is nonzero
  cls->add_option("--weight", class_weight, "Weight of the grt basis element")->capture_default_str();
  cls->add_option("--index", cfg.index, "Index into the grt basis at that weight")->capture_default_str();
  cls->add_flag("--control", cfg.control, "Test the negative control t12 - t23 instead");
  cls->add_option("--arity-window", cfg.arity_window, "Arity window of the cocycle test")->capture_default_str();

  auto* basis = app.add_subcommand("dk-basis", "Quotient basis of the Drinfeld-Kohno Lie algebra");
  basis->add_option("--points", cfg.points, "Number of points n of g([n])")->capture_default_str();
  basis->add_option("--weight", cfg.weight, "Weight")->capture_default_str();

  auto* lie = app.add_subcommand("freelie-dims", "Lyndon word counts against the Witt formula");
  lie->add_option("--letters", cfg.letters, "Alphabet size")->capture_default_str();
  lie->add_option("--max-degree", cfg.max_degree, "Largest degree")->capture_default_str();

  auto* hom = app.add_subcommand("homology", "Homology ranks of the CE or bar complex of g([n])");
  hom->add_option("--complex", cfg.complex, "ce or bar")->check(CLI::IsMember({"ce", "bar"}))->capture_default_str();
  hom->add_option("--points", cfg.points, "Number of points")->capture_default_str();
  hom->add_option("--max-weight", cfg.max_weight, "Largest weight")->capture_default_str();
  hom->add_option("--degree-floor", cfg.degree_floor, "Lowest bar degree; 0 builds each weight completely")
      ->capture_default_str();

  auto* def = app.add_subcommand("defcomplex", "Dimensions of the deformation complex components");
  def->add_option("--arity-cap", cfg.arity_cap, "Largest arity")->capture_default_str();
  def->add_option("--max-weight", cfg.max_weight, "Largest weight")->capture_default_str();

  auto* chk = app.add_subcommand("check", "Property suites");
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  chk->add_option("--suite", cfg.suite, "relations, operad, jacobi, dsquared, commutation, shuffles or all")
      ->required()
      ->check(CLI::IsMember(suite_choices));
  chk->add_option("--arity-cap", cfg.arity_cap, "Bound on set sizes and operad arities")->capture_default_str();
  chk->add_option("--max-weight", cfg.max_weight, "Bound on Lie weights")->capture_default_str();

  std::string format = "json";
  for (auto* sub : {dims, cls, basis, lie, hom, def, chk}) add_common(sub, cfg, format);

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !app.get_subcommand_no_throw(args[0])) {
    err << "grtk: unknown command '" << args[0] << "'\n" << app.help();
    return 2;
  }

  std::vector<std::string> argv_store{"grtk"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "grt-class-test") cfg.weight = class_weight;
  cfg.format = format == "csv" ? Format::Csv : format == "text" ? Format::Text : Format::Json;

  try {
    const Report r = execute(cfg);
    out << render(r, cfg.format);
    if (!r.ok) {
      err << "grtk: " << cfg.command << " detected a failure\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "grtk: " << e.what() << "\n" << app.get_subcommands().front()->help();
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "grtk: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "grtk: computation failed: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace grtk::cli
