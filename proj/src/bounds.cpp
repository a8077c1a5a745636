#include "ujssp/bounds.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

namespace ujssp {

Assignment max_weight_assignment(const Matrix& weight) {
  const std::size_t n = weight.size();
  for (const auto& row : weight) {
    if (row.size() != n) throw InputError("assignment matrix must be square");
  }
  Assignment out;
  if (n == 0) return out;
  // Shortest augmenting paths with potentials on cost = -weight; 1-based, with
  // column 0 as the virtual start.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(n + 1, 0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  out.column_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) out.column_of_row[match[j] - 1] = j - 1;
  for (std::size_t i = 0; i < n; ++i) out.value += weight[i][out.column_of_row[i]];
  return out;
}

Matrix assignment_matrix(const Instance& instance) {
  const std::size_t n = instance.size();
  const auto order = instance.z_order();
  Matrix q(n, std::vector<double>(n, 0.0));
  std::vector<double> earlier;  // probabilities of ranks < j, descending
  for (std::size_t j = 0; j < n; ++j) {
    const Job& job = instance.job(order[j]);
    double reach = 1;
    for (std::size_t k = 0; k <= j; ++k) {
      if (k > 0) reach *= earlier[k - 1];
      q[j][k] = std::max(0.0, reach * job.pi * job.reward - job.cost);
    }
    earlier.insert(std::upper_bound(earlier.begin(), earlier.end(), job.pi, std::greater<>()),
                   job.pi);
  }
  return q;
}

double assignment_upper_bound(const Instance& instance) {
  return max_weight_assignment(assignment_matrix(instance)).value;
}

Solution solve_identical_prob(const Instance& instance) {
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = instance.size();
  if (n == 0) return make_solution(instance, {});
  const double pi = instance.job(0).pi;
  for (const Job& j : instance.jobs()) {
    if (!ScalarTraits<double>::approx_equal(j.pi, pi)) {
      throw InputError("success probabilities are not all equal");
    }
  }
  std::vector<double> power(n + 1, 1.0);
  for (std::size_t k = 1; k <= n; ++k) power[k] = power[k - 1] * pi;

  Solution best = make_solution(instance, {});
  SolveStats stats;
  for (std::size_t h = 1; h <= n; ++h) {
    Matrix w(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
      const Job& job = instance.job(j);
      for (std::size_t k = 0; k < h; ++k) {
        w[j][k] = std::max(0.0, job.reward * power[k + 1] - job.cost);
      }
    }
    const Assignment a = max_weight_assignment(w);
    ++stats.subsets_evaluated;
    std::vector<std::size_t> picked;
    for (std::size_t j = 0; j < n; ++j) {
      if (a.column_of_row[j] < h && w[j][a.column_of_row[j]] > 0) picked.push_back(j);
    }
    Solution s = make_solution(instance, std::move(picked));
    if (s.objective > best.objective &&
        !ScalarTraits<double>::approx_equal(s.objective, best.objective)) {
      best = std::move(s);
    }
  }
  best.stats = stats;
  best.stats.subsets_evaluated += 1;  // H = 0
  best.stats.runtime = std::chrono::steady_clock::now() - start;
  return best;
}

std::string_view to_string(Refinement r) {
  switch (r) {
    case Refinement::Pairwise:
      return "pairwise";
    case Refinement::BigM:
      return "bigm";
    case Refinement::None:
      break;
  }
  return "none";
}

namespace {

std::string num(double v) { return ScalarTraits<double>::format(v); }

// Appends " + c name" / " - c name"; unit coefficients are written bare.
void term(std::ostream& out, double coef, const std::string& name, bool& first) {
  if (coef == 0) return;
  const double mag = std::abs(coef);
  if (first) {
    out << (coef < 0 ? " -" : "");
  } else {
    out << (coef < 0 ? " -" : " +");
  }
  out << ' ';
  if (mag != 1) out << num(mag) << ' ';
  out << name;
  first = false;
}

std::string x2(std::size_t j, std::size_t k) {
  return "x_" + std::to_string(j) + "_" + std::to_string(k);
}

std::string compact_model(const Instance& instance) {
  const std::size_t n = instance.size();
  const auto order = instance.z_order();
  auto job = [&](std::size_t j) -> const Job& { return instance.job(order[j - 1]); };
  auto x = [](std::size_t j) { return "x_" + std::to_string(j); };
  auto p = [](std::size_t j) { return "P_" + std::to_string(j); };

  std::ostringstream out;
  out << "\\ compact model, " << n << " jobs in Z order\n";
  out << "Maximize\n obj:";
  bool first = true;
  for (std::size_t j = 1; j <= n; ++j) {
    term(out, job(j).reward, p(j), first);
    term(out, -job(j).cost, x(j), first);
  }
  if (first) out << " 0 " << (n ? x(1) : std::string("x_0"));
  out << "\nSubject To\n";
  for (std::size_t j = 1; j <= n; ++j) {
    out << " init_" << j << ": " << p(j) << " - " << num(job(j).pi) << ' ' << x(j) << " <= 0\n";
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const std::string pj = num(job(j).pi);
      out << " order_" << i << '_' << j << ": " << p(j) << " - " << pj << ' ' << p(i) << " + " << pj
          << ' ' << x(i) << " <= " << pj << '\n';
    }
  }
  out << "Bounds\n";
  for (std::size_t j = 1; j <= n; ++j) out << ' ' << p(j) << " >= 0\n";
  out << "Binaries\n";
  for (std::size_t j = 1; j <= n; ++j) out << ' ' << x(j) << '\n';
  out << "End\n";
  return out.str();
}

std::string assignment_model(const Instance& instance, Refinement refinement) {
  const std::size_t n = instance.size();
  const Matrix q = assignment_matrix(instance);
  std::ostringstream out;
  out << "\\ assignment model, " << n << " jobs in Z order, refinement " << to_string(refinement)
      << '\n';
  out << "Maximize\n obj:";
  bool first = true;
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t k = 1; k <= n; ++k) term(out, q[j - 1][k - 1], x2(j, k), first);
  }
  if (first) out << " 0 " << (n ? x2(1, 1) : std::string("x_0_0"));
  out << "\nSubject To\n";
  for (std::size_t j = 1; j <= n; ++j) {
    out << " job_" << j << ':';
    first = true;
    for (std::size_t k = 1; k <= n; ++k) term(out, 1, x2(j, k), first);
    out << " = 1\n";
  }
  for (std::size_t k = 1; k <= n; ++k) {
    out << " pos_" << k << ':';
    first = true;
    for (std::size_t j = 1; j <= n; ++j) term(out, 1, x2(j, k), first);
    out << " = 1\n";
  }
  if (refinement == Refinement::Pairwise) {
    for (std::size_t j = 1; j <= n; ++j) {
      for (std::size_t jj = j + 1; jj <= n; ++jj) {
        for (std::size_t k = 2; k <= n; ++k) {
          for (std::size_t kk = 1; kk < k; ++kk) {
            out << " uncr_" << j << '_' << k << '_' << jj << '_' << kk << ": " << x2(j, k) << " + "
                << x2(jj, kk) << " <= 1\n";
          }
        }
      }
    }
  }
  if (refinement == Refinement::BigM) {
    for (std::size_t j = 2; j <= n; ++j) {
      for (std::size_t k = 1; k < n; ++k) {
        const std::string tag = std::to_string(j) + "_" + std::to_string(k);
        const std::size_t m1 = std::min(n - k, j);
        const std::size_t m2 = std::min(k, n - j);
        out << " u1_" << tag << ':';
        first = true;
        for (std::size_t jj = 1; jj < j; ++jj) {
          for (std::size_t kk = k + 1; kk <= n; ++kk) term(out, 1, x2(jj, kk), first);
        }
        out << " - " << m1 << " d1_" << tag << " <= 0\n";
        out << " u2_" << tag << ':';
        first = true;
        for (std::size_t jj = j; jj <= n; ++jj) {
          for (std::size_t kk = 1; kk <= k; ++kk) term(out, 1, x2(jj, kk), first);
        }
        out << " - " << m2 << " d2_" << tag << " <= 0\n";
        out << " u3_" << tag << ": d1_" << tag << " + d2_" << tag << " <= 1\n";
      }
    }
  }
  out << "Bounds\n";
  for (std::size_t j = 1; j <= n; ++j) {
    for (std::size_t k = 1; k <= n; ++k) out << " 0 <= " << x2(j, k) << " <= 1\n";
  }
  if (refinement == Refinement::BigM && n >= 2) {
    out << "Binaries\n";
    for (std::size_t j = 2; j <= n; ++j) {
      for (std::size_t k = 1; k < n; ++k) {
        out << " d1_" << j << '_' << k << "\n d2_" << j << '_' << k << '\n';
      }
    }
  }
  out << "End\n";
  return out.str();
}

std::optional<double> parse_tagged(const std::string& line, std::string_view tag) {
  if (line.rfind(tag, 0) != 0 || line.size() <= tag.size() || line[tag.size()] != ' ') {
    return std::nullopt;
  }
  std::string rest = line.substr(tag.size() + 1);
  while (!rest.empty() && (rest.back() == '\r' || rest.back() == ' ')) rest.pop_back();
  try {
    return ScalarTraits<double>::parse(rest);
  } catch (const Error&) {
    throw AdapterError("cannot read value in solver line '" + line + "'");
  }
}

double relative_gap(double upper, double best) {
  if (upper == best) return 0;
  return (upper - best) / best;
}

}  // namespace

std::string export_milp(const Instance& instance, Refinement refinement) {
  return refinement == Refinement::None ? compact_model(instance)
                                        : assignment_model(instance, refinement);
}

std::variant<ExternalResult, Unavailable> external_solve(std::string_view lp_text,
                                                         std::string_view command) {
  if (command.empty()) return Unavailable{"no solver command configured"};
  static unsigned counter = 0;
  const auto path = std::filesystem::temp_directory_path() /
                    ("ujssp-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".lp");
  {
    std::ofstream file(path, std::ios::binary);
    file << lp_text;
    if (!file) throw AdapterError("cannot write " + path.string());
  }
  const std::string cmd = std::string(command) + " '" + path.string() + "'";
  std::string output;
  int status = 0;
  if (FILE* pipe = ::popen(cmd.c_str(), "r")) {
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
    status = ::pclose(pipe);
  } else {
    std::filesystem::remove(path);
    return Unavailable{"cannot start '" + std::string(command) + "'"};
  }
  std::filesystem::remove(path);
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    return Unavailable{"solver command not found: " + std::string(command)};
  }
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
    throw AdapterError("solver exited with status " + std::to_string(status));
  }

  std::optional<double> obj, bound, root;
  std::istringstream lines(output);
  for (std::string line; std::getline(lines, line);) {
    if (auto v = parse_tagged(line, "OBJ")) obj = v;
    if (auto v = parse_tagged(line, "BOUND")) bound = v;
    if (auto v = parse_tagged(line, "ROOT")) root = v;
  }
  if (!obj || !bound) throw AdapterError("solver output lacks OBJ and BOUND lines");
  ExternalResult r;
  r.objective = *obj;
  r.bound = *bound;
  r.root_bound = root;
  r.final_mip_gap = relative_gap(*bound, *obj);
  if (root) r.lp_gap = relative_gap(*root, *obj);
  return r;
}

}  // namespace ujssp
