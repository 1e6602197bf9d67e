// Acceptance run: one PASS/FAIL line per criterion, with timings against each budget.
// Optional argument: path to the grtk executable, used for the cross-process determinism check.

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "grtk/cli/cli.hpp"
#include "grtk/cli/suites.hpp"
#include "grtk/complexes/complex.hpp"
#include "grtk/dk/dk.hpp"
#include "grtk/freelie/word.hpp"
#include "grtk/grt/conditions.hpp"
#include "grtk/grt/deformation.hpp"

namespace {

using grtk::complexes::BarElement;
using grtk::dk::DKElement;
using grtk::exactla::Rational;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = budget_s <= 0 || secs < budget_s;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << (pass ? "PASS" : "FAIL") << "  " << id << ". " << title << ": " << o.detail << " [" << secs << " s";
  if (budget_s > 0) line << " of " << budget_s << " s" << (in_time ? "" : ", over budget");
  line << "]";
  std::cout << line.str() << std::endl;
}

// Lyndon words by brute force: primitive words strictly below all their proper rotations.
std::uint64_t lyndon_count_brute(int m, int d) {
  std::uint64_t total = 1, count = 0;
  for (int i = 0; i < d; ++i) total *= static_cast<std::uint64_t>(m);
  std::vector<int> w(static_cast<std::size_t>(d));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = d - 1; i >= 0; --i, c /= static_cast<std::uint64_t>(m)) w[static_cast<std::size_t>(i)] = static_cast<int>(c % static_cast<std::uint64_t>(m));
    bool lyndon = true;
    for (int r = 1; r < d && lyndon; ++r) {
      std::vector<int> rot(w.begin() + r, w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + r);
      lyndon = w < rot;
    }
    if (lyndon) ++count;
  }
  return count;
}

// Direct image of a bar element along a permutation of its points.
BarElement relabel(const BarElement& b, const std::vector<int>& perm) {
  return grtk::complexes::bar_map(*grtk::dk::direct_image_hom(grtk::dk::SetMap(b.n, b.n, perm)), b);
}

std::string summarize_rows(const std::vector<grtk::cli::CheckRow>& rows, bool& ok) {
  std::size_t checks = 0;
  std::string first;
  ok = true;
  for (const auto& r : rows) {
    checks += r.checks;
    if (!r.ok && ok) first = r.check + ": " + r.failure;
    ok = ok && r.ok;
  }
  return std::to_string(rows.size()) + " checks, " + std::to_string(checks) + " instances" +
         (ok ? ", zero violations" : ", first violation " + first);
}

std::string cli_output(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = grtk::cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str();
}

std::string process_output(const std::string& binary, const std::vector<std::string>& args) {
  std::string cmd = binary;
  for (const auto& a : args) cmd += " " + a;
  std::string text;
  if (FILE* p = popen(cmd.c_str(), "r")) {
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) text.append(buf.data(), n);
    text = std::to_string(pclose(p)) + "\n" + text;
  }
  return text;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout << "grtk acceptance" << std::endl;

  criterion(1, "free Lie dimensions", 5, [] {
    int cells = 0;
    for (int m = 1; m <= 4; ++m)
      for (int d = 1; d <= 8; ++d) {
        const std::uint64_t lyndon = grtk::freelie::lyndon_basis(m, d).size();
        if (lyndon != grtk::freelie::witt_dimension(m, d) || lyndon != lyndon_count_brute(m, d))
          return Outcome{false, "mismatch at m=" + std::to_string(m) + ", d=" + std::to_string(d)};
        ++cells;
      }
    return Outcome{true, std::to_string(cells) + " cells (m <= 4, d <= 8): Lyndon basis = Witt formula = brute force"};
  });

  criterion(2, "Drinfeld-Kohno dimensions", 60, [] {
    int cells = 0;
    for (int n = 2; n <= 5; ++n)
      for (int w = 1; w <= 5; ++w) {
        // g([n]) is an iterated extension by free Lie algebras on 1, ..., n-1 letters
        std::uint64_t expect = 0;
        for (int k = 1; k < n; ++k) expect += lyndon_count_brute(k, w);
        const std::size_t got = grtk::dk::dk_basis(n, w)->dim();
        if (got != expect)
          return Outcome{false, "dim g([" + std::to_string(n) + "])_" + std::to_string(w) + " = " + std::to_string(got) +
                                    ", expected " + std::to_string(expect)};
        ++cells;
      }
    return Outcome{true, std::to_string(cells) + " cells (n <= 5, w <= 5) match the free-Lie decomposition; dim g([5])_5 = " +
                             std::to_string(grtk::dk::dk_basis(5, 5)->dim())};
  });

  criterion(3, "relation preservation and functoriality", 0, [] {
    bool ok = false;
    const std::string s = summarize_rows(grtk::cli::run_suite("relations", 5, 4, 1), ok);
    return Outcome{ok, "sets of size <= 5, w <= 4: " + s};
  });

  criterion(4, "[Im f_*, Im g^*] = 0", 0, [] {
    bool ok = false;
    const std::string s = summarize_rows(grtk::cli::run_suite("commutation", 5, 3, 1), ok);
    return Outcome{ok, "every subset and partition with |T| <= 5, w <= 3: " + s};
  });

  criterion(5, "operad axioms, d^2 = 0 and Jacobi", 0, [] {
    bool a = false, b = false, c = false;
    const std::string axioms = summarize_rows(grtk::cli::run_suite("operad", 5, 2, 1), a);
    std::vector<grtk::cli::CheckRow> diffs;
    for (const auto& r : grtk::cli::run_suite("dsquared", 5, 1, 1))
      if (r.check.rfind("ho", 0) == 0) diffs.push_back(r);  // the hoass and hocomm rows
    const std::string d2 = summarize_rows(diffs, b);
    const std::string jac = summarize_rows(grtk::cli::run_suite("jacobi", 4, 1, 1), c);
    return Outcome{a && b && c, "axioms " + axioms + "; d^2 through arity 5 " + d2 + "; Jacobi " + jac};
  });

  criterion(6, "homology of g([2]) and antisymmetrization", 120, [] {
    // g([2]) is the line spanned by t12, so both complexes compute Tor over k[t]: Λ(t), in (0, 0) and (-1, 1).
    const std::map<grtk::complexes::Cell, std::size_t> koszul{{{0, 0}, 1}, {{-1, 1}, 1}};
    for (int w = 0; w <= 4; ++w)
      for (const bool bar : {false, true}) {
        const auto cx = bar ? grtk::complexes::bar_complex(2, w, std::min(-1, -w)) : grtk::complexes::ce_complex(2, w);
        for (const auto& [cell, rank] : grtk::complexes::homology_ranks(cx)) {
          const auto it = koszul.find(cell);
          if (rank != (it == koszul.end() ? 0 : it->second))
            return Outcome{false, std::string(bar ? "bar" : "ce") + " H at (" + std::to_string(cell.first) + "," +
                                      std::to_string(cell.second) + ") = " + std::to_string(rank)};
        }
      }
    int cells = 0;
    for (int n = 2; n <= 3; ++n)
      for (int w = 1; w <= 3; ++w)
        for (const auto& c : grtk::complexes::antisymmetrization_report(n, w)) {
          if (!c.chain_map || !c.injective())
            return Outcome{false, "antisymmetrization fails at n=" + std::to_string(n) + ", w=" + std::to_string(w) +
                                      ", degree " + std::to_string(c.degree)};
          ++cells;
        }
    return Outcome{true, "ce and bar ranks match Λ(t) through weight 4; antisymmetrization is a chain map, injective on H in " +
                             std::to_string(cells) + " cells (n <= 3, w <= 3)"};
  });

  criterion(7, "grt dimensions", 300, [] {
    // weight 1 by hand: the shuffle equations leave t12 - t23, the pentagon sends it to t12 - t34
    const DKElement phi = DKElement::t(3, 1, 2) - DKElement::t(3, 2, 3);
    const auto sk = grtk::grt::shuffle_kernel(1);
    const bool hand = sk.size() == 1 && (sk[0] == phi || sk[0] == -phi) &&
                      grtk::grt::pentagon_condition(1).apply(phi.sparse()) ==
                          (DKElement::t(4, 1, 2) - DKElement::t(4, 3, 4)).sparse();
    const std::array<std::size_t, 6> expected{0, 0, 1, 0, 1, 0};
    std::string dims;
    bool ok = hand;
    for (int w = 1; w <= 6; ++w) {
      const std::size_t d = grtk::grt::grt_basis(w).size();
      dims += (w > 1 ? "," : "") + std::to_string(d);
      ok = ok && d == expected[static_cast<std::size_t>(w - 1)];
    }
    return Outcome{ok, "dims w=1..6 = " + dims + " (expected 0,0,1,0,1,0); weight-1 hand computation " +
                           (hand ? "reproduced" : "NOT reproduced")};
  });

  criterion(8, "main theorem desk check at weights 3 and 5", 600, [] {
    std::string detail;
    bool ok = true;
    for (int w : {3, 5}) {
      const auto basis = grtk::grt::grt_basis(w);
      if (basis.size() != 1) return Outcome{false, "grt at weight " + std::to_string(w) + " is not one-dimensional"};
      const auto v = grtk::grt::cohomology_class_test(basis[0], 6);
      ok = ok && v.cocycle && !v.coboundary;
      detail += (w == 3 ? "" : "; ") + std::string("w=") + std::to_string(w) + ": cocycle=" + (v.cocycle ? "true" : "false") +
                " coboundary=" + (v.coboundary ? "true" : "false") + " (exact preimage search over arities <= " +
                std::to_string(v.preimage_arity) + ", rank " + std::to_string(v.coboundary_rank) + " of " +
                std::to_string(v.preimage_dim) + " unknowns)";
    }
    return Outcome{ok, detail};
  });

  criterion(9, "negative control t12 - t23", 0, [] {
    const DKElement phi = DKElement::t(3, 1, 2) - DKElement::t(3, 2, 3);
    const auto sys = grtk::grt::condition_system(1);
    const bool shuffle_only = sys.shuffle_block.apply(phi.sparse()).empty() && !sys.pentagon_block.apply(phi.sparse()).empty();
    const auto v = grtk::grt::cohomology_class_test(phi, 6);
    const bool ok = shuffle_only && v.in_space && !v.cocycle && v.witness && v.witness->min_arity() == 4 &&
                    !v.witness->components.at(4).is_zero();
    return Outcome{ok, std::string("shuffle block ") + (shuffle_only ? "satisfied, pentagon block violated" : "unexpected") +
                           "; cocycle=" + (v.cocycle ? "true" : "false") +
                           "; witness " + (v.witness ? v.witness->to_string() : std::string("none"))};
  });

  criterion(10, "mu-generator checks", 0, [] {
    using namespace grtk::complexes;
    const BarElement c = bar_unit(2);
    const BarElement t = bar_from_lie(DKElement::t(2, 1, 2));
    const bool cycles = bar_differential(c).is_zero() && bar_differential(t).is_zero();
    BarElement assoc = bar_compose(2, 0, 2, c, c);
    assoc.add(bar_compose(2, 1, 2, c, c), Rational(-1));
    const BarElement tt = bar_compose(2, 0, 2, t, t);
    BarElement jacobi = tt;
    jacobi.add(relabel(tt, {1, 2, 0}));
    jacobi.add(relabel(tt, {2, 0, 1}));
    const BarElement tc = bar_compose(2, 1, 2, t, c), ct = bar_compose(2, 0, 2, c, t);
    BarElement leibniz = tc;
    leibniz.add(relabel(ct, {2, 0, 1}), Rational(-1));
    leibniz.add(relabel(ct, {1, 0, 2}), Rational(-1));
    bool weights_ok = true;
    for (const auto* e : {&assoc, &jacobi, &leibniz})
      weights_ok = weights_ok && (e->is_zero() || bar_grading(*e).second <= 2);
    const bool boundaries = is_bar_boundary(assoc) && is_bar_boundary(jacobi) && is_bar_boundary(leibniz);
    return Outcome{cycles && boundaries && weights_ok,
                   std::string("d(c) = d(t) = 0: ") + (cycles ? "yes" : "no") +
                       "; associativity, Jacobi and Leibniz defects are boundaries over [3]: " + (boundaries ? "yes" : "no")};
  });

  criterion(11, "determinism", 0, [&] {
    const std::vector<std::vector<std::string>> suite{
        {"grt-dims", "--max-weight", "5", "--class-test"},
        {"grt-class-test", "--control"},
        {"dk-basis", "--points", "4", "--weight", "3"},
        {"freelie-dims", "--letters", "4", "--max-degree", "7"},
        {"homology", "--complex", "ce", "--points", "3", "--max-weight", "3"},
        {"homology", "--complex", "bar", "--points", "3", "--max-weight", "3"},
        {"defcomplex", "--arity-cap", "5", "--max-weight", "3"},
        {"check", "--suite", "all"},
    };
    auto full_run = [&](const std::string& jobs) {
      std::string all;
      for (auto args : suite) {
        args.insert(args.end(), {"--format", "json", "--jobs", jobs});
        all += cli_output(args);
      }
      return all;
    };
    const std::string first = full_run("1"), second = full_run("1"), parallel = full_run("4");
    bool ok = first == second && first == parallel;
    std::string detail = std::to_string(first.size()) + " bytes of JSON; two runs " +
                         std::string(first == second ? "identical" : "DIFFER") + "; jobs 1 vs 4 " +
                         (first == parallel ? "identical" : "DIFFER");
    if (argc > 1) {
      // fresh processes start with cold caches
      std::string a, b;
      for (auto args : suite) {
        args.insert(args.end(), {"--format", "json", "--jobs", "1"});
        a += process_output(argv[1], args);
        args.back() = "3";
        b += process_output(argv[1], args);
      }
      ok = ok && a == b && a == first;
      detail += "; separate processes " + std::string(a == b && a == first ? "identical" : "DIFFER");
    }
    return Outcome{ok, detail};
  });

  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
