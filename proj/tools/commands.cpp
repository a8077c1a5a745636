#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ujssp/bounds.hpp"
#include "ujssp/dp.hpp"
#include "ujssp/fixtures.hpp"
#include "ujssp/greedy.hpp"
#include "ujssp/io.hpp"
#include "ujssp/oracle.hpp"
#include "ujssp/stepwise.hpp"

namespace fs = std::filesystem;

namespace ujssp::cli {

namespace {

// Method cannot run on this input; exit code 3.
class Inapplicable : public Error {
 public:
  using Error::Error;
};

struct Loaded {
  AnyInstance instance;
  std::optional<PppInstance> ppp;
};

HpInstance lift(const Instance& in, unsigned bits) {
  PrecisionScope scope(bits);
  std::vector<HpJob> jobs;
  for (const Job& j : in.jobs()) {
    jobs.push_back(HpJob{j.id, HighPrecisionScalar(j.pi), HighPrecisionScalar(j.cost),
                         HighPrecisionScalar(j.reward)});
  }
  return HpInstance(std::move(jobs), bits, in.origin());
}

Loaded load(const fs::path& path, std::optional<unsigned> bits) {
  const std::string text = read_text(path);
  Loaded out{Instance{}, std::nullopt};
  try {
    if (is_ppp_json(text)) {
      out.ppp = ppp_from_json(text);
      out.instance = reduce_ppp(*out.ppp, bits.value_or(0)).instance;
      return out;
    }
    out.instance = instance_from_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  if (bits) {
    if (auto* f = std::get_if<Instance>(&out.instance)) out.instance = lift(*f, *bits);
  }
  return out;
}

struct Outcome {
  std::string objective;
  double value = 0;
  std::uint64_t subsets = 0;
  double runtime_ms = 0;
  std::vector<int> selected;
};

struct MethodOptions {
  bool speedups = true;
  Ordering ordering;
  SolveControl control;
  Refinement refinement = Refinement::None;
  std::string solver_cmd;
  std::optional<unsigned> precision_bits;
};

template <class T>
Outcome outcome_of(const BasicSolution<T>& s) {
  Outcome o;
  o.objective = ScalarTraits<T>::format(s.objective);
  o.value = ScalarTraits<T>::to_double(s.objective);
  o.subsets = s.stats.subsets_evaluated;
  o.runtime_ms = s.stats.runtime_ms();
  o.selected = s.selected;
  return o;
}

const Instance& float64_only(const AnyInstance& any, const std::string& method) {
  const auto* f = std::get_if<Instance>(&any);
  if (!f) throw Inapplicable(method + " needs a Float64 instance");
  return *f;
}

template <class F>
auto timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  auto value = f();
  return std::make_pair(std::move(value),
                        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
}

Outcome run_method(const std::string& method, const Loaded& in, const MethodOptions& opt) {
  if (method == "forward" || method == "backward") {
    StepwiseConfig config;
    config.direction = method == "forward" ? Direction::Forward : Direction::Backward;
    config.speedups_enabled = opt.speedups;
    config.ordering = opt.ordering;
    config.control = opt.control;
    return std::visit(
        [&](const auto& inst) {
          try {
            return outcome_of(solve_stepwise(inst, config));
          } catch (const InputError& e) {
            throw Inapplicable(e.what());
          }
        },
        in.instance);
  }
  if (method == "greedy") {
    return std::visit([](const auto& inst) { return outcome_of(greedy_select(inst)); }, in.instance);
  }
  if (method == "oracle") {
    return std::visit(
        [&](const auto& inst) {
          try {
            return outcome_of(brute_force(inst, opt.control).optimum);
          } catch (const CapacityError& e) {
            throw Inapplicable(e.what());
          }
        },
        in.instance);
  }
  if (method == "dp") {
    const Instance& inst = float64_only(in.instance, method);
    DpOptions d;
    d.control = opt.control;
    try {
      return outcome_of(solve_dp(inst, d));
    } catch (const InputError& e) {
      throw Inapplicable(e.what());
    } catch (const CapacityError& e) {
      throw Inapplicable(e.what());
    }
  }
  if (method == "identical-prob") {
    const Instance& inst = float64_only(in.instance, method);
    try {
      return outcome_of(solve_identical_prob(inst));
    } catch (const InputError& e) {
      throw Inapplicable(e.what());
    }
  }
  if (method == "assignment-ub") {
    const Instance& inst = float64_only(in.instance, method);
    auto [bound, ms] = timed([&] { return assignment_upper_bound(inst); });
    Outcome o;
    o.objective = ScalarTraits<double>::format(bound);
    o.value = bound;
    o.runtime_ms = ms;
    return o;
  }
  if (method == "ppp") {
    if (!in.ppp) throw Inapplicable("ppp needs a PPP instance file");
    PppSolveOptions p;
    p.ordering = opt.ordering;
    p.speedups_enabled = opt.speedups;
    p.precision_bits = opt.precision_bits.value_or(0);
    p.control = opt.control;
    return outcome_of(solve_ppp_mode(*in.ppp, p).solution);
  }
  if (method == "milp") {
    const Instance& inst = float64_only(in.instance, method);
    const std::string lp = export_milp(inst, opt.refinement);
    auto [result, ms] = timed([&] { return external_solve(lp, opt.solver_cmd); });
    if (const auto* u = std::get_if<Unavailable>(&result)) throw Inapplicable(u->reason);
    const auto& r = std::get<ExternalResult>(result);
    Outcome o;
    o.objective = ScalarTraits<double>::format(r.objective);
    o.value = r.objective;
    o.runtime_ms = ms;
    return o;
  }
  throw ParseError("unknown method '" + method + "'");
}

std::string join_ids(const std::vector<int>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(ids[i]);
  }
  return out;
}

std::string fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

Ordering ordering_of(const std::string& name, std::uint64_t seed) {
  try {
    return Ordering{parse_ordering(name), seed};
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

std::optional<std::chrono::steady_clock::time_point> deadline_after(std::optional<double> seconds) {
  if (!seconds) return std::nullopt;
  return std::chrono::steady_clock::now() +
         std::chrono::duration_cast<std::chrono::steady_clock::duration>(
             std::chrono::duration<double>(*seconds));
}

}  // namespace

int run_generate(const GenerateArgs& args) {
  std::vector<ManifestEntry> manifest;
  const fs::path out(args.out);
  try {
    if (args.dataset == "uniform") {
      std::vector<UniformScheme> schemes;
      if (args.scheme == "all") {
        schemes = {UniformScheme::I, UniformScheme::II, UniformScheme::III, UniformScheme::IV};
      } else {
        schemes = {parse_scheme(args.scheme)};
      }
      for (UniformScheme s : schemes) {
        for (std::size_t k = 0; k < args.count; ++k) {
          const std::uint64_t seed = args.seed + k;
          const std::string name = "uniform_" + std::string(to_string(s)) + "_n" +
                                   std::to_string(args.n) + "_s" + std::to_string(seed) + ".json";
          write_instance(generate_uniform(args.n, s, seed), out / name);
          manifest.push_back({seed, args.n, std::string(to_string(s)), name});
        }
      }
    } else {
      std::vector<PppType> types;
      if (args.type == "all") {
        types = {PppType::I, PppType::II};
      } else {
        types = {parse_ppp_type(args.type)};
      }
      for (PppType t : types) {
        for (std::size_t k = 0; k < args.count; ++k) {
          const std::uint64_t seed = args.seed + k;
          const std::string name = "ppp_" + std::string(to_string(t)) + "_n" +
                                   std::to_string(args.n) + "_s" + std::to_string(seed) + ".json";
          write_ppp(generate_ppp(args.n, t, seed), out / name);
          manifest.push_back({seed, args.n, std::string(to_string(t)), name});
        }
      }
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  write_text(out / "manifest.csv", manifest_to_csv(manifest));
  std::cout << manifest.size() << " instances written to " << out.string() << '\n';
  return kOk;
}

int run_solve(const SolveArgs& args) {
  if (args.method == "milp-export") {
    const Loaded in = load(args.instance, std::nullopt);
    const auto* inst = std::get_if<Instance>(&in.instance);
    if (!inst) {
      std::cerr << "error: milp-export needs a Float64 instance\n";
      return kInapplicable;
    }
    Refinement r = Refinement::None;
    if (args.refinement == "pairwise") r = Refinement::Pairwise;
    if (args.refinement == "bigm") r = Refinement::BigM;
    fs::path path = args.out.empty() ? fs::path(args.instance).replace_extension(".lp") : fs::path(args.out);
    write_text(path, export_milp(*inst, r));
    std::cout << path.string() << '\n';
    return kOk;
  }

  MethodOptions opt;
  opt.speedups = !args.no_speedups;
  opt.ordering = ordering_of(args.ordering, args.seed);
  opt.control.deadline = deadline_after(args.time_limit_s);
  opt.precision_bits = args.precision_bits;
  opt.solver_cmd = args.solver_cmd;
  if (args.refinement == "pairwise") opt.refinement = Refinement::Pairwise;
  if (args.refinement == "bigm") opt.refinement = Refinement::BigM;
  std::ofstream trace_file;
  if (args.trace == "-") {
    opt.control.trace = &std::cerr;
  } else if (!args.trace.empty()) {
    trace_file.open(args.trace);
    if (!trace_file) throw ParseError("cannot write trace file " + args.trace);
    opt.control.trace = &trace_file;
  }

  Outcome o;
  try {
    const Loaded in = load(args.instance, args.precision_bits);
    o = run_method(args.method, in, opt);
  } catch (const Inapplicable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInapplicable;
  } catch (const PrecisionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInapplicable;
  } catch (const DeadlineExceeded& e) {
    std::cerr << "error: time limit reached after " << e.stats().subsets_evaluated
              << " subsets\n";
    return kInapplicable;
  }
  if (args.header) std::cout << "instance,method,objective,subsets_evaluated,runtime_ms,selected_ids\n";
  std::cout << args.instance << ',' << args.method << ',' << o.objective << ',' << o.subsets << ','
            << fixed3(o.runtime_ms) << ',' << join_ids(o.selected) << '\n';
  return kOk;
}

int run_bench(const BenchArgs& args) {
  const fs::path manifest_path(args.manifest);
  const auto entries = manifest_from_csv(read_text(manifest_path));
  const fs::path base = manifest_path.parent_path();
  for (const auto& m : args.methods) {
    static const std::vector<std::string> known{"forward", "backward", "dp", "greedy", "oracle",
                                                "assignment-ub", "identical-prob", "ppp"};
    if (std::find(known.begin(), known.end(), m) == known.end()) {
      std::cerr << "error: unknown bench method '" << m << "'\n";
      return kUsage;
    }
  }

  struct Row {
    const ManifestEntry* entry;
    std::string method;
    bool solved = false;
    Outcome outcome;
  };
  std::vector<Row> rows;
  for (const auto& e : entries) {
    for (const auto& m : args.methods) rows.push_back({&e, m, false, {}});
  }

  const double limit_ms = args.time_limit_s * 1000.0;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      Row& row = rows[i];
      MethodOptions opt;
      opt.speedups = !args.no_speedups;
      opt.control.deadline = deadline_after(args.time_limit_s);
      const auto start = std::chrono::steady_clock::now();
      try {
        const Loaded in = load(base / row.entry->path, std::nullopt);
        row.outcome = run_method(row.method, in, opt);
        row.solved = row.outcome.runtime_ms <= limit_ms;
      } catch (const DeadlineExceeded& e) {
        row.outcome.subsets = e.stats().subsets_evaluated;
        row.outcome.runtime_ms = e.stats().runtime_ms();
      } catch (const Error&) {
        row.outcome.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      }
    }
  };
  {
    const unsigned workers = std::max(1U, std::min<unsigned>(args.jobs, static_cast<unsigned>(rows.size())));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
  }

  std::ostringstream out;
  out << "kind,instance,n,scheme,method,solved,objective,subsets_evaluated,runtime_ms\n";
  struct Group {
    std::size_t count = 0;
    std::size_t solved = 0;
    double objective = 0;
    double subsets = 0;
    double runtime = 0;
  };
  std::vector<std::tuple<std::size_t, std::string, std::string>> keys;
  std::map<std::tuple<std::size_t, std::string, std::string>, Group> groups;
  for (const Row& r : rows) {
    out << "instance," << r.entry->path << ',' << r.entry->n << ',' << r.entry->scheme << ','
        << r.method << ',' << (r.solved ? 1 : 0) << ',' << (r.solved ? r.outcome.objective : "")
        << ',' << r.outcome.subsets << ',' << fixed3(r.outcome.runtime_ms) << '\n';
    auto key = std::make_tuple(r.entry->n, r.entry->scheme, r.method);
    if (!groups.count(key)) keys.push_back(key);
    Group& g = groups[key];
    ++g.count;
    if (r.solved) {
      ++g.solved;
      g.objective += r.outcome.value;
      g.subsets += static_cast<double>(r.outcome.subsets);
      g.runtime += r.outcome.runtime_ms;
    }
  }
  for (const auto& key : keys) {
    const Group& g = groups[key];
    const auto& [n, scheme, method] = key;
    out << "aggregate,*," << n << ',' << scheme << ',' << method << ','
        << ScalarTraits<double>::format(100.0 * static_cast<double>(g.solved) /
                                        static_cast<double>(g.count))
        << ',';
    if (g.solved) {
      const auto s = static_cast<double>(g.solved);
      out << ScalarTraits<double>::format(g.objective / s) << ','
          << ScalarTraits<double>::format(g.subsets / s) << ',' << fixed3(g.runtime / s);
    } else {
      out << ",,";
    }
    out << '\n';
  }
  if (args.out.empty()) {
    std::cout << out.str();
  } else {
    write_text(args.out, out.str());
  }
  return kOk;
}

namespace {

class Checks {
 public:
  void expect(bool ok, const std::string& name, const std::string& detail = "") {
    if (ok) {
      std::cout << "PASS " << name << '\n';
    } else {
      std::cout << "FAIL " << name << (detail.empty() ? "" : ": " + detail) << '\n';
      ++failures_;
    }
  }
  [[nodiscard]] int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string show(double v) { return ScalarTraits<double>::format(v); }

bool close(double a, double b) { return ScalarTraits<double>::approx_equal(a, b); }

Instance fixture_or(const std::string& dir, const char* file, Instance fallback) {
  if (dir.empty()) return fallback;
  const fs::path p = fs::path(dir) / file;
  if (!fs::exists(p)) return fallback;
  const AnyInstance any = read_instance(p);
  const auto* f = std::get_if<Instance>(&any);
  if (!f) throw ParseError(p.string() + ": fixture must be a Float64 instance");
  return *f;
}

PppInstance ppp_fixture_or(const std::string& dir, const char* file, PppInstance fallback) {
  if (dir.empty()) return fallback;
  const fs::path p = fs::path(dir) / file;
  return fs::exists(p) ? read_ppp(p) : fallback;
}

std::string ids(const std::vector<int>& v) { return "{" + join_ids(v) + "}"; }

}  // namespace

int run_verify(const VerifyArgs& args) {
  Checks check;
  StepwiseConfig plain;
  plain.speedups_enabled = false;

  {
    const Instance walk = fixture_or(args.fixtures, "walkthrough.json", fixtures::four_job_walkthrough());
    const auto f = solve_forward(walk, plain);
    check.expect(close(f.objective, 173.75) && f.selected == std::vector<int>{1, 3} &&
                     f.stats.subsets_evaluated == 6,
                 "walkthrough forward", ids(f.selected) + " z=" + show(f.objective) + " subsets=" +
                                            std::to_string(f.stats.subsets_evaluated));
    StepwiseConfig back = plain;
    back.direction = Direction::Backward;
    const auto b = solve_backward(walk, back);
    check.expect(close(b.objective, 173.75) && b.selected == std::vector<int>{1, 3} &&
                     b.stats.subsets_evaluated == 8,
                 "walkthrough backward", ids(b.selected) + " z=" + show(b.objective) + " subsets=" +
                                             std::to_string(b.stats.subsets_evaluated));
    try {
      const auto d = solve_dp(walk);
      check.expect(close(d.objective, 173.75), "walkthrough dp", "z=" + show(d.objective));
    } catch (const Error& e) {
      check.expect(false, "walkthrough dp", e.what());
    }
  }
  {
    const Instance t2 = fixture_or(args.fixtures, "equal_reward.json", fixtures::equal_reward_counterexample());
    const auto g = greedy_select(t2);
    const auto o = brute_force(t2).optimum;
    check.expect(close(g.objective, 0.103) && g.selected == std::vector<int>{1, 2},
                 "equal reward greedy", ids(g.selected) + " z=" + show(g.objective));
    check.expect(close(o.objective, 0.113) && o.selected == std::vector<int>{1, 3},
                 "equal reward optimum", ids(o.selected) + " z=" + show(o.objective));
  }
  {
    const Instance t3 = fixture_or(args.fixtures, "equal_expected_reward.json",
                                   fixtures::equal_expected_reward_counterexample());
    const auto g = greedy_select(t3);
    const auto o = brute_force(t3).optimum;
    check.expect(close(g.objective, 80.6) && g.selected == std::vector<int>{1, 2, 3},
                 "equal expected reward greedy", ids(g.selected) + " z=" + show(g.objective));
    check.expect(close(o.objective, 82.8) && o.selected == std::vector<int>{1, 3, 4},
                 "equal expected reward optimum", ids(o.selected) + " z=" + show(o.objective));
  }
  {
    const PppInstance tiny = ppp_fixture_or(args.fixtures, "tiny_partition.json", fixtures::tiny_partition());
    const auto r = solve_ppp_mode(tiny);
    PrecisionScope scope(r.bits);
    const HighPrecisionScalar gap = abs(r.solution.objective - r.threshold);
    check.expect(r.perfect() && gap <= working_tolerance(r.bits), "product partition threshold",
                 "z=" + ScalarTraits<HighPrecisionScalar>::format(r.solution.objective) +
                     " tau=" + ScalarTraits<HighPrecisionScalar>::format(r.threshold));
  }

  std::size_t mismatches = 0;
  std::string first;
  for (std::size_t k = 0; k < args.seed_battery; ++k) {
    const auto scheme = static_cast<UniformScheme>(k % 4);
    const std::size_t n = 5 + (k / 4) % 11;
    const std::uint64_t seed = args.seed + k;
    const Instance inst = generate_uniform(n, scheme, seed);
    const double best = brute_force(inst).optimum.objective;
    StepwiseConfig back;
    back.direction = Direction::Backward;
    std::vector<std::pair<const char*, double>> got{
        {"forward", solve_forward(inst).objective},
        {"backward", solve_backward(inst, back).objective},
        {"dp", solve_dp(inst).objective}};
    if (classify_special_case(inst) != SpecialCase::General) {
      got.emplace_back("greedy", greedy_select(inst).objective);
    }
    for (const auto& [name, value] : got) {
      if (close(value, best)) continue;
      if (mismatches++ == 0) {
        first = std::string(name) + " on scheme " + std::string(to_string(scheme)) + " n=" +
                std::to_string(n) + " seed=" + std::to_string(seed) + ": " + show(value) +
                " vs " + show(best);
      }
    }
  }
  check.expect(mismatches == 0, "oracle battery (" + std::to_string(args.seed_battery) + " instances)",
               std::to_string(mismatches) + " mismatches, first " + first);
  return check.failures() == 0 ? kOk : kVerifyFailed;
}

}  // namespace ujssp::cli
