#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <thread>

#include "grtk/cli/cli.hpp"
#include "grtk/cli/parallel.hpp"
#include "grtk/cli/suites.hpp"
#include "grtk/complexes/complex.hpp"
#include "grtk/dk/dk.hpp"
#include "grtk/freelie/word.hpp"
#include "grtk/grt/conditions.hpp"
#include "grtk/grt/deformation.hpp"

namespace grtk::cli {

namespace {

using json = nlohmann::ordered_json;
using dk::DKElement;

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

std::uint64_t witt_sum(int n, int w) {
  std::uint64_t s = 0;
  for (int k = 1; k < n; ++k) s += freelie::witt_dimension(k, w);
  return s;
}

json rational_list(const std::vector<exactla::Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.to_string());
  return out;
}

void dump_if_configured(int n, int w) {
  const std::string dir = cache_dir();
  if (!dir.empty()) write_basis_dump(dir, n, w);
}

json verdict_json(const grt::ClassVerdict& v) {
  json o;
  o["in_space"] = v.in_space;
  o["cocycle"] = v.cocycle;
  o["coboundary"] = v.coboundary;
  o["nonzero_class"] = v.nonzero_class();
  o["preimage_dim"] = v.preimage_dim;
  o["coboundary_rank"] = v.coboundary_rank;
  o["preimage_arity"] = v.preimage_arity;
  return o;
}

// ------------------------------------------------------------------ grt-dims

Report grt_dims(const JobConfig& c) {
  require(c.max_weight >= 1, "--max-weight must be positive");
  require(c.arity_window >= 4, "--arity-window must be at least 4");
  Report r;
  r.config["max_weight"] = c.max_weight;
  r.config["class_test"] = c.class_test;
  if (c.class_test) r.config["arity_window"] = c.arity_window;
  r.columns = {"weight", "dim_g3", "dim_shuffle_kernel", "dim_grt", "basis", "coordinates", "class_test"};
  const auto rows = run_cells<json>(static_cast<std::size_t>(c.max_weight), c.jobs, [&](std::size_t i) {
    const int w = static_cast<int>(i) + 1;
    const auto basis = grt::grt_basis(w);
    json row;
    row["weight"] = w;
    row["dim_g3"] = dk::dk_basis(3, w)->dim();
    row["dim_shuffle_kernel"] = grt::shuffle_kernel(w).size();
    row["dim_grt"] = basis.size();
    row["basis"] = json::array();
    row["coordinates"] = json::array();
    for (const auto& phi : basis) {
      row["basis"].push_back(phi.to_string());
      row["coordinates"].push_back(rational_list(phi.coords()));
    }
    row["class_test"] = nullptr;
    if (c.class_test) {
      row["class_test"] = json::array();
      for (const auto& phi : basis) row["class_test"].push_back(verdict_json(grt::cohomology_class_test(phi, c.arity_window)));
    }
    dump_if_configured(3, w);
    dump_if_configured(4, w);
    return row;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    r.ok = r.ok && rows[i]["dim_g3"].get<std::uint64_t>() == witt_sum(3, static_cast<int>(i) + 1);
    r.rows.push_back(rows[i]);
  }
  return r;
}

// ------------------------------------------------------------------ grt-class-test

Report grt_class_test(const JobConfig& c) {
  require(c.arity_window >= 4, "--arity-window must be at least 4");
  Report r;
  DKElement phi;
  if (c.control) {
    phi = DKElement::t(3, 1, 2) - DKElement::t(3, 2, 3);
    r.config["control"] = true;
  } else {
    require(c.weight >= 1, "--weight must be positive");
    require(c.index >= 0, "--index must be non-negative");
    const auto basis = grt::grt_basis(c.weight);
    require(static_cast<std::size_t>(c.index) < basis.size(),
            "--index " + std::to_string(c.index) + " out of range: grt has dimension " + std::to_string(basis.size()) +
                " at weight " + std::to_string(c.weight));
    phi = basis[static_cast<std::size_t>(c.index)];
    r.config["control"] = false;
    r.config["weight"] = c.weight;
    r.config["index"] = c.index;
  }
  r.config["arity_window"] = c.arity_window;
  r.columns = {"weight", "element", "in_space", "cocycle", "coboundary", "nonzero_class",
               "preimage_dim", "coboundary_rank", "preimage_arity", "witness_arity", "witness"};
  const auto v = grt::cohomology_class_test(phi, c.arity_window);
  json row;
  row["weight"] = phi.weight();
  row["element"] = phi.to_string();
  const json verdict = verdict_json(v);
  for (const auto& [k, x] : verdict.items()) row[k] = x;
  row["witness_arity"] = v.witness ? json(v.witness->min_arity()) : json(nullptr);
  row["witness"] = v.witness ? json(v.witness->to_string()) : json(nullptr);
  // reorder to the column order
  json ordered;
  for (const auto& col : r.columns) ordered[col] = row[col];
  r.rows.push_back(ordered);
  return r;
}

// ------------------------------------------------------------------ dk-basis

Report dk_basis_cmd(const JobConfig& c) {
  require(c.points >= 1 && c.points <= 6, "--points must lie in 1..6");
  require(c.weight >= 1, "--weight must be positive");
  Report r;
  r.config["points"] = c.points;
  r.config["weight"] = c.weight;
  r.columns = {"points", "weight", "dimension", "witt_sum", "representatives"};
  const auto b = dk::dk_basis(c.points, c.weight);
  json row;
  row["points"] = c.points;
  row["weight"] = c.weight;
  row["dimension"] = b->dim();
  row["witt_sum"] = witt_sum(c.points, c.weight);
  row["representatives"] = b->representative_strings();
  r.ok = b->dim() == witt_sum(c.points, c.weight);
  r.rows.push_back(row);
  dump_if_configured(c.points, c.weight);
  return r;
}

// ------------------------------------------------------------------ freelie-dims

Report freelie_dims(const JobConfig& c) {
  require(c.letters >= 1 && c.letters <= 15, "--letters must lie in 1..15");
  require(c.max_degree >= 1 && c.max_degree <= 16, "--max-degree must lie in 1..16");
  Report r;
  r.config["letters"] = c.letters;
  r.config["max_degree"] = c.max_degree;
  r.columns = {"letters", "degree", "lyndon_count", "witt_dimension"};
  const auto rows = run_cells<json>(static_cast<std::size_t>(c.max_degree), c.jobs, [&](std::size_t i) {
    const int d = static_cast<int>(i) + 1;
    json row;
    row["letters"] = c.letters;
    row["degree"] = d;
    row["lyndon_count"] = freelie::lyndon_basis(c.letters, d).size();
    row["witt_dimension"] = freelie::witt_dimension(c.letters, d);
    return row;
  });
  for (const auto& row : rows) {
    r.ok = r.ok && row["lyndon_count"].get<std::uint64_t>() == row["witt_dimension"].get<std::uint64_t>();
    r.rows.push_back(row);
  }
  return r;
}

// ------------------------------------------------------------------ homology

Report homology(const JobConfig& c) {
  require(c.complex == "ce" || c.complex == "bar", "--complex must be ce or bar");
  require(c.points >= 2 && c.points <= 6, "--points must lie in 2..6");
  require(c.max_weight >= 0, "--max-weight must be non-negative");
  require(c.degree_floor <= 0, "--degree-floor must be non-positive");
  const bool bar = c.complex == "bar";
  Report r;
  r.config["complex"] = c.complex;
  r.config["points"] = c.points;
  r.config["max_weight"] = c.max_weight;
  if (bar) r.config["degree_floor"] = c.degree_floor;
  r.columns = {"weight", "degree", "dim", "rank", "truncated"};
  const auto cells = run_cells<json>(static_cast<std::size_t>(c.max_weight) + 1, c.jobs, [&](std::size_t i) {
    const int w = static_cast<int>(i);
    // floor 0 asks for the complete complex, which reaches down to degree −w
    const int floor = c.degree_floor < 0 ? c.degree_floor : std::min(-1, -w);
    const complexes::ChainComplex cx = bar ? complexes::bar_complex(c.points, w, floor) : complexes::ce_complex(c.points, w);
    json rows = json::array();
    for (const auto& [cell, rank] : complexes::homology_ranks(cx)) {
      json row;
      row["weight"] = cell.second;
      row["degree"] = cell.first;
      row["dim"] = cx.dim(cell.first, cell.second);
      row["rank"] = rank;
      row["truncated"] = !cx.complete && cell.first == cx.min_degree;
      rows.push_back(row);
    }
    return rows;
  });
  for (const auto& rows : cells)
    for (const auto& row : rows) r.rows.push_back(row);
  return r;
}

// ------------------------------------------------------------------ defcomplex

Report defcomplex(const JobConfig& c) {
  require(c.arity_cap >= 2, "--arity-cap must be at least 2");
  require(c.max_weight >= 0, "--max-weight must be non-negative");
  Report r;
  r.config["arity_cap"] = c.arity_cap;
  r.config["max_weight"] = c.max_weight;
  r.columns = {"weight", "arity", "chain_length", "degree", "dim"};
  std::vector<std::pair<int, int>> keys;
  for (int w = 0; w <= c.max_weight; ++w)
    for (int n = 2; n <= c.arity_cap; ++n) keys.emplace_back(w, n);
  const auto cells = run_cells<json>(keys.size(), c.jobs, [&](std::size_t i) {
    const auto [w, n] = keys[i];
    json rows = json::array();
    for (int m = 0; m <= std::min(w, n - 1); ++m) {
      json row;
      row["weight"] = w;
      row["arity"] = n;
      row["chain_length"] = m;
      row["degree"] = n - 2 - m;
      row["dim"] = grt::deformation_space(n, w, -m).size();
      rows.push_back(row);
    }
    return rows;
  });
  for (const auto& rows : cells)
    for (const auto& row : rows) r.rows.push_back(row);
  return r;
}

// ------------------------------------------------------------------ check

Report check(const JobConfig& c) {
  const auto& names = suite_names();
  std::vector<std::string> suites;
  if (c.suite == "all") {
    suites = names;
  } else {
    require(std::find(names.begin(), names.end(), c.suite) != names.end(), "unknown suite '" + c.suite + "'");
    suites = {c.suite};
  }
  require(c.arity_cap >= 2, "--arity-cap must be at least 2");
  require(c.max_weight >= 1, "--max-weight must be positive");
  Report r;
  r.config["suite"] = c.suite;
  r.config["arity_cap"] = c.arity_cap;
  r.config["max_weight"] = c.max_weight;
  r.columns = {"suite", "check", "ok", "checks", "failure"};
  for (const auto& s : suites)
    for (const auto& row : run_suite(s, c.arity_cap, c.max_weight, c.jobs)) {
      json o;
      o["suite"] = row.suite;
      o["check"] = row.check;
      o["ok"] = row.ok;
      o["checks"] = row.checks;
      o["failure"] = row.failure;
      r.ok = r.ok && row.ok;
      r.rows.push_back(o);
    }
  return r;
}

}  // namespace

std::string cache_dir() {
  const char* v = std::getenv("GRTK_CACHE_DIR");
  return v ? std::string(v) : std::string();
}

void write_basis_dump(const std::string& dir, int n, int w) {
  namespace fs = std::filesystem;
  const auto b = dk::dk_basis(n, w);
  json doc;
  doc["points"] = n;
  doc["weight"] = w;
  doc["dimension"] = b->dim();
  doc["representatives"] = b->representative_strings();
  const std::string text = doc.dump(2) + "\n";
  std::error_code ec;
  fs::create_directories(dir, ec);
  const fs::path target = fs::path(dir) / ("dk_" + std::to_string(n) + "_" + std::to_string(w) + ".json");
  // write-then-rename keeps concurrent writers from exposing half a file
  const fs::path tmp = target.string() + ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream f(tmp);
    if (!f) throw std::runtime_error("cannot write basis dump into " + dir);
    f << text;
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot write basis dump " + target.string());
  }
}

Report execute(const JobConfig& cfg) {
  static const std::map<std::string, std::function<Report(const JobConfig&)>> commands{
      {"grt-dims", grt_dims},     {"grt-class-test", grt_class_test}, {"dk-basis", dk_basis_cmd},
      {"freelie-dims", freelie_dims}, {"homology", homology},          {"defcomplex", defcomplex},
      {"check", check},
  };
  const auto it = commands.find(cfg.command);
  if (it == commands.end()) throw ConfigError("unknown command '" + cfg.command + "'");
  require(cfg.jobs >= 1, "--jobs must be positive");
  Report r = it->second(cfg);
  r.command = cfg.command;
  return r;
}

}  // namespace grtk::cli
