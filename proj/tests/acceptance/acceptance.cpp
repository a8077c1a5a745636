// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures (capped), so ctest picks it up.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "envelope_fuzz.hpp"
#include "support.hpp"
#include "ujssp/bounds.hpp"
#include "ujssp/dp.hpp"
#include "ujssp/fixtures.hpp"
#include "ujssp/greedy.hpp"
#include "ujssp/instances.hpp"
#include "ujssp/io.hpp"
#include "ujssp/oracle.hpp"
#include "ujssp/stepwise.hpp"

using namespace ujssp;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  const auto start = Clock::now();
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  if (!o.ok) ++failures;
  std::printf("%s %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
}

bool close_rel(double a, double b, double tol = 1e-9) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

StepwiseConfig cfg(Direction d, bool speedups) {
  StepwiseConfig c;
  c.direction = d;
  c.speedups_enabled = speedups;
  return c;
}

template <class F>
double best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t = Clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t).count());
  }
  return best;
}

Outcome walkthrough() {
  const Instance in = fixtures::four_job_walkthrough();
  std::ostringstream trace;
  StepwiseConfig fc = cfg(Direction::Forward, false);
  fc.control.trace = &trace;
  const auto f = solve_forward(in, fc);
  const auto b = solve_backward(in, cfg(Direction::Backward, false));
  std::istringstream rows(trace.str());
  std::string step1, step2;
  std::getline(rows, step1);
  std::getline(rows, step2);
  const bool crossing = step2.find(R"("breakpoints":[100])") != std::string::npos;
  const double fms = best_ms(20, [&] { (void)solve_forward(in, cfg(Direction::Forward, false)); });
  const double bms = best_ms(20, [&] { (void)solve_backward(in, cfg(Direction::Backward, false)); });
  const bool ok = f.selected == std::vector<int>{1, 3} && f.objective == 173.75 &&
                  f.stats.subsets_evaluated == 6 && b.selected == std::vector<int>{1, 3} &&
                  b.objective == 173.75 && b.stats.subsets_evaluated == 8 && crossing && fms < 1 &&
                  bms < 1;
  std::ostringstream d;
  d << "forward z=" << f.objective << " subsets=" << f.stats.subsets_evaluated << ", backward z=" << b.objective
    << " subsets=" << b.stats.subsets_evaluated << ", step-2 crossing at 100: " << (crossing ? "yes" : "no")
    << ", " << fmt("%.3f", fms) << "/" << fmt("%.3f", bms) << " ms";
  return {ok, d.str()};
}

Outcome counterexamples() {
  const Instance t2 = fixtures::equal_reward_counterexample();
  const Instance t3 = fixtures::equal_expected_reward_counterexample();
  const auto g2 = greedy_select(t2);
  const auto o2 = brute_force(t2).optimum;
  const auto g3 = greedy_select(t3);
  const auto o3 = brute_force(t3).optimum;
  const bool ok = g2.selected == std::vector<int>{1, 2} && close_rel(g2.objective, 0.103) &&
                  o2.selected == std::vector<int>{1, 3} && close_rel(o2.objective, 0.113) &&
                  g3.selected == std::vector<int>{1, 2, 3} && close_rel(g3.objective, 80.6) &&
                  o3.selected == std::vector<int>{1, 3, 4} && close_rel(o3.objective, 82.8);
  std::ostringstream d;
  d.precision(12);
  d << "greedy " << g2.objective << " vs " << o2.objective << "; greedy " << g3.objective << " vs "
    << o3.objective;
  return {ok, d.str()};
}

// The random battery shared by the equivalence and bounds criteria.
std::vector<Instance> battery() {
  std::vector<Instance> out;
  for (int s = 0; s < 4; ++s) {
    for (std::uint64_t k = 0; k < 200; ++k) {
      out.push_back(generate_uniform(5 + k % 11, static_cast<UniformScheme>(s), 10'000 * (s + 1) + k));
    }
  }
  return out;
}

Outcome oracle_battery(const std::vector<Instance>& all, std::vector<double>& optima) {
  const auto start = Clock::now();
  std::size_t bad = 0;
  std::size_t greedy_checked = 0;
  optima.clear();
  for (const Instance& in : all) {
    const double best = brute_force(in).optimum.objective;
    optima.push_back(best);
    const double f = solve_forward(in).objective;
    const double b = solve_backward(in).objective;
    const double d = solve_dp(in).objective;
    if (!close_rel(f, best) || !close_rel(b, best) || !close_rel(d, best)) ++bad;
    if (classify_special_case(in) != SpecialCase::General) {
      ++greedy_checked;
      if (!close_rel(greedy_select(in).objective, best)) ++bad;
    }
  }
  // Random draws are never a special case, so greedy also runs on variants
  // with one shared cost or one shared probability.
  for (std::size_t k = 0; k < all.size(); k += 4) {
    const Instance& in = all[k];
    std::vector<Job> same_cost(in.jobs().begin(), in.jobs().end());
    std::vector<Job> same_pi = same_cost;
    for (Job& j : same_cost) j.cost = in.job(0).cost;
    for (Job& j : same_pi) j.pi = in.job(in.size() / 2).pi;
    for (const Instance& v : {Instance(same_cost), Instance(same_pi)}) {
      if (classify_special_case(v) == SpecialCase::General) continue;
      ++greedy_checked;
      if (!close_rel(greedy_select(v).objective, brute_force(v).optimum.objective)) ++bad;
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  std::ostringstream d;
  d << all.size() << " instances, " << bad << " mismatches, greedy checked on " << greedy_checked
    << ", " << fmt("%.2f", secs) << " s";
  return {bad == 0 && secs < 60, d.str()};
}

Outcome envelope_fuzz() {
  const auto rep = support::fuzz_envelope(1000, 200, 20240601, 1000);
  std::ostringstream d;
  d << rep.sets << " sets, " << rep.probes << " probes, " << rep.mismatches << " mismatches, "
    << rep.invariant_failures << " invariant failures";
  return {rep.mismatches == 0 && rep.invariant_failures == 0 && rep.sets == 1000, d.str()};
}

Outcome properties() {
  std::size_t perms = 0;
  std::size_t z_bad = 0;
  // Every ordering of every subset of a small instance, up to eight jobs.
  for (int t = 0; t < 6; ++t) {
    const Instance in = support::loose_instance(8, 500 + t);
    for (unsigned mask = 1; mask < 256; ++mask) {
      if (t >= 2 && __builtin_popcount(mask) < 6) continue;
      std::vector<int> ids;
      for (unsigned k = 0; k < 8; ++k) {
        if (mask >> k & 1U) ids.push_back(in.job(k).id);
      }
      std::vector<int> z;
      for (std::size_t p : z_sorted_positions(in, std::span<const int>(ids))) z.push_back(in.job(p).id);
      const double zr = expected_reward(in, std::span<const int>(z));
      std::sort(ids.begin(), ids.end());
      do {
        ++perms;
        if (expected_reward(in, std::span<const int>(ids)) > zr + 1e-9 * std::max(1.0, zr)) ++z_bad;
      } while (std::next_permutation(ids.begin(), ids.end()));
    }
  }

  std::size_t pairs = 0;
  std::size_t sub_bad = 0;
  for (int t = 0; t < 3; ++t) {
    const std::size_t n = 10 + t;
    const Instance in = generate_uniform(n, static_cast<UniformScheme>(t + 1), 700 + t);
    const unsigned full = (1U << n) - 1;
    std::vector<double> reward(full + 1);
    for (unsigned m = 0; m <= full; ++m) {
      std::vector<int> ids;
      for (unsigned k = 0; k < n; ++k) {
        if (m >> k & 1U) ids.push_back(in.job(k).id);
      }
      reward[m] = net_profit(in, std::span<const int>(ids));
      for (unsigned k = 0; k < n; ++k) {
        if (m >> k & 1U) reward[m] += in.job(k).cost;
      }
    }
    // All S subset of T, j outside T.
    for (unsigned tm = 0; tm <= full; ++tm) {
      for (unsigned s = tm;; s = (s - 1) & tm) {
        for (unsigned j = 0; j < n; ++j) {
          if (tm >> j & 1U) continue;
          ++pairs;
          const double gs = reward[s | 1U << j] - reward[s];
          const double gt = reward[tm | 1U << j] - reward[tm];
          if (gs < gt - 1e-9 * std::max(1.0, std::abs(gt))) ++sub_bad;
        }
        if (s == 0) break;
      }
    }
  }
  std::ostringstream d;
  d << perms << " orderings checked, " << z_bad << " beat the Z-rule; " << pairs
    << " (S, T, j) triples, " << sub_bad << " submodularity violations";
  return {z_bad == 0 && sub_bad == 0, d.str()};
}

Outcome bounds(const std::vector<Instance>& all, const std::vector<double>& optima) {
  std::size_t below = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (assignment_upper_bound(all[k]) < optima[k] - 1e-9 * std::max(1.0, optima[k])) ++below;
  }
  std::size_t same_pi = 0;
  std::size_t wrong = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance in = support::same_pi_instance(5 + seed % 11, 3000 + seed);
    const double best = brute_force(in).optimum.objective;
    ++same_pi;
    if (!close_rel(solve_identical_prob(in).objective, best) || !close_rel(greedy_select(in).objective, best)) {
      ++wrong;
    }
  }
  std::ostringstream d;
  d << below << " of " << all.size() << " bounds below the optimum; identical-probability solver wrong on "
    << wrong << " of " << same_pi;
  return {below == 0 && wrong == 0, d.str()};
}

Outcome scale() {
  const Instance a = generate_uniform(10'000, UniformScheme::I, 1);
  const Instance b = generate_uniform(2'000, UniformScheme::III, 1);
  auto t = Clock::now();
  const auto sa = solve_forward(a);
  const double ta = std::chrono::duration<double>(Clock::now() - t).count();
  t = Clock::now();
  const auto sb = solve_forward(b);
  const double tb = std::chrono::duration<double>(Clock::now() - t).count();
  const bool agree = close_rel(solve_backward(b).objective, sb.objective);
  std::ostringstream d;
  d << "scheme (i) n=10000 " << fmt("%.3f", ta) << " s (" << sa.stats.subsets_evaluated
    << " subsets), scheme (iii) n=2000 " << fmt("%.3f", tb) << " s (" << sb.stats.subsets_evaluated
    << " subsets), backward agrees: " << (agree ? "yes" : "no");
  return {ta < 10 && tb < 300 && agree, d.str()};
}

Outcome candidate_counts() {
  std::ostringstream d;
  bool ok = true;
  for (int s = 0; s < 4; ++s) {
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      sum += static_cast<double>(
          solve_forward(generate_uniform(20, static_cast<UniformScheme>(s), seed)).stats.subsets_evaluated);
    }
    const double mean = sum / 10;
    ok = ok && mean >= 20 && mean <= 200;
    d << (s ? ", " : "") << to_string(static_cast<UniformScheme>(s)) << "=" << mean;
  }
  return {ok, "mean subsets at n=20: " + d.str()};
}

bool perfect_split_exists(const std::vector<int>& a) {
  const BigInt w = ppp_product(a);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << a.size()); ++m) {
    BigInt p = 1;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (m >> k & 1U) p *= a[k];
    }
    if (p * p == w) return true;
  }
  return false;
}

Outcome ppp() {
  std::size_t planted_ok = 0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    const PppInstance p = generate_ppp(4 + k % 12, PppType::II, 800 + k);
    const auto r = solve_ppp_mode(p);
    PrecisionScope scope(r.bits);
    const bool at_threshold = abs(r.solution.objective - r.threshold) < working_tolerance(r.bits);
    if (r.perfect() && at_threshold && r.chosen_product * r.rest_product == ppp_product(p.values)) ++planted_ok;
  }
  std::size_t no_split = 0;
  std::size_t below = 0;
  for (std::uint64_t k = 0; no_split < 50 && k < 500; ++k) {
    const PppInstance p = generate_ppp(4 + k % 12, PppType::I, 900 + k);
    if (perfect_split_exists(p.values)) continue;
    ++no_split;
    const auto r = solve_ppp_mode(p);
    PrecisionScope scope(r.bits);
    if (!r.perfect() && r.solution.objective < r.threshold) ++below;
  }
  std::ostringstream d;
  d << planted_ok << "/50 planted instances reach the threshold with equal products; " << below << "/"
    << no_split << " instances without a perfect split stay strictly below";
  return {planted_ok == 50 && no_split > 0 && below == no_split, d.str()};
}

Outcome dp_slope() {
  std::vector<double> xs;
  std::vector<double> ys;
  std::ostringstream d;
  std::size_t n = 8;
  for (double target = 1e5; target < 1.3e7; target *= 2) {
    Instance in;
    std::uint64_t cells = 0;
    for (;; n += std::max<std::size_t>(1, n / 50)) {
      in = generate_uniform(n, UniformScheme::I, 4242);
      cells = static_cast<std::uint64_t>(in.size()) * static_cast<std::uint64_t>(integral_budget(in) + 1);
      if (static_cast<double>(cells) >= target) break;
    }
    const int reps = cells < 1'000'000 ? 15 : 5;
    const double ms = best_ms(reps, [&] { (void)solve_dp(in); });
    xs.push_back(std::log(static_cast<double>(cells)));
    ys.push_back(std::log(ms));
    d << " " << cells << ":" << fmt("%.2f", ms) << "ms";
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
  double sxy = 0;
  double sxx = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxy += (xs[k] - mx) * (ys[k] - my);
    sxx += (xs[k] - mx) * (xs[k] - mx);
  }
  const double slope = sxy / sxx;
  return {slope >= 0.8 && slope <= 1.3, "slope " + fmt("%.3f", slope) + " over" + d.str()};
}

std::vector<std::string> value_columns(const std::string& csv) {
  std::vector<std::string> out;
  std::istringstream in(csv);
  for (std::string line; std::getline(in, line);) {
    out.push_back(line.substr(0, line.rfind(',')));  // drop runtime_ms
  }
  return out;
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "ujssp_acceptance_determinism";
  fs::remove_all(root);
  std::vector<std::string> csv;
  for (const char* side : {"a", "b"}) {
    const fs::path dir = root / side;
    const std::string gen = "generate --scheme all --n 14 --count 5 --seed 2024 --out " + dir.string();
    const std::string ppp_gen = "generate --dataset ppp --type all --n 12 --count 3 --seed 2024 --out " +
                                (dir / "ppp").string();
    if (support::run_cli(gen).status != 0 || support::run_cli(ppp_gen).status != 0) {
      return {false, "generate failed"};
    }
    const auto bench = support::run_cli("bench " + (dir / "manifest.csv").string() +
                                        " --method forward,backward,dp,greedy,oracle --jobs 2");
    if (bench.status != 0) return {false, "bench failed: " + bench.out};
    csv.push_back(bench.out);
  }
  std::size_t files = 0;
  std::size_t differ = 0;
  for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
    if (!e.is_regular_file()) continue;
    ++files;
    if (read_text(e.path()) != read_text(root / "b" / fs::relative(e.path(), root / "a"))) ++differ;
  }
  const bool same_values = value_columns(csv[0]) == value_columns(csv[1]);
  fs::remove_all(root);
  std::ostringstream d;
  d << files << " generated files, " << differ << " differ; bench value columns "
    << (same_values ? "identical" : "differ");
  return {files > 0 && differ == 0 && same_values, d.str()};
}

}  // namespace

int main() {
  report("worked example trace", walkthrough);
  report("greedy counterexamples", counterexamples);
  const std::vector<Instance> all = battery();
  std::vector<double> optima;
  report("oracle equivalence battery", [&] { return oracle_battery(all, optima); });
  report("envelope fuzz", envelope_fuzz);
  report("Z-rule and submodularity properties", properties);
  report("bounds validity", [&] { return bounds(all, optima); });
  report("scale targets", scale);
  report("candidate counts at n=20", candidate_counts);
  report("product partition equivalence", ppp);
  report("DP complexity witness", dp_slope);
  report("determinism", determinism);
  std::printf("%d failure(s)\n", failures);
  return std::min(failures, 100);
}
