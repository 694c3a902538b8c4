#include "soro/demand.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "soro/errors.hpp"

namespace soro {

namespace {
constexpr double kClassTol = 1e-9;
}

int Demand::find(int s, int t) const {
  for (int i = 0; i < static_cast<int>(entries_.size()); ++i)
    if (entries_[i].s == s && entries_[i].t == t) return i;
  return -1;
}

void Demand::set(int s, int t, double amount) {
  if (s == t) throw ValidationError("demand diagonal must stay empty");
  if (s < 0 || t < 0) throw ValidationError("demand endpoint out of range");
  int i = find(s, t);
  if (amount <= 0) {
    if (i >= 0) entries_.erase(entries_.begin() + i);
    return;
  }
  if (i >= 0)
    entries_[i].amount = amount;
  else
    entries_.push_back({s, t, amount});
}

void Demand::add(int s, int t, double amount) { set(s, t, this->amount(s, t) + amount); }

double Demand::amount(int s, int t) const {
  int i = find(s, t);
  return i >= 0 ? entries_[i].amount : 0.0;
}

bool Demand::contains(int s, int t) const { return find(s, t) >= 0; }

double Demand::size() const {
  double total = 0;
  for (const auto& e : entries_) total += e.amount;
  return total;
}

Demand Demand::scaled(double factor) const {
  Demand out;
  for (const auto& e : entries_) out.set(e.s, e.t, e.amount * factor);
  return out;
}

bool dominated_by(const Demand& a, const Demand& b, double tol) {
  for (const auto& e : a.entries())
    if (e.amount > b.amount(e.s, e.t) + tol) return false;
  return true;
}

DemandClass classify(const Demand& d, const Graph& g, int alpha) {
  DemandClass c;
  c.alpha = alpha;
  c.integral = true;
  c.zero_one = true;
  c.alpha_special = true;
  std::map<int, double> row, col;
  for (const auto& e : d.entries()) {
    if (std::abs(e.amount - std::round(e.amount)) > kClassTol || e.amount < 0.5)
      c.integral = false;
    if (std::abs(e.amount - 1.0) > kClassTol) c.zero_one = false;
    row[e.s] += e.amount;
    col[e.t] += e.amount;
    double special = alpha + min_cut(g, e.s, e.t);
    if (std::abs(e.amount - special) > kClassTol) c.alpha_special = false;
  }
  c.permutation = c.zero_one;
  if (c.permutation) {
    for (auto& [v, sum] : row)
      if (sum > 1 + kClassTol) c.permutation = false;
    for (auto& [v, sum] : col)
      if (sum > 1 + kClassTol) c.permutation = false;
  }
  return c;
}

Demand load_demand(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Demand d;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    int s, t;
    double amount;
    if (!(ls >> s)) continue;  // blank line
    if (!(ls >> t >> amount))
      throw ValidationError("malformed demand line " + std::to_string(lineno));
    if (s < 1 || t < 1)
      throw ValidationError("demand endpoints are 1-based, line " +
                            std::to_string(lineno));
    if (amount <= 0)
      throw ValidationError("demand amounts must be positive, line " +
                            std::to_string(lineno));
    if (s == t)
      throw ValidationError("demand diagonal must stay empty, line " +
                            std::to_string(lineno));
    d.add(s - 1, t - 1, amount);
  }
  return d;
}

std::string save_demand(const Demand& d) {
  std::ostringstream out;
  char buf[64];
  for (const auto& e : d.entries()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.amount);
    out << e.s + 1 << " " << e.t + 1 << " " << buf << "\n";
  }
  return out.str();
}

Demand load_demand_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open demand file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_demand(buf.str());
}

void save_demand_file(const Demand& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write demand file: " + path);
  out << save_demand(d);
}

Demand random_permutation_demand(int n, Rng& rng) {
  if (n < 2) throw ValidationError("permutation demand needs n >= 2");
  for (;;) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.next_below(i + 1)]);
    Demand d;
    for (int i = 0; i < n; ++i)
      if (perm[i] != i) d.set(i, perm[i], 1.0);
    if (!d.empty()) return d;
  }
}

Demand random_zero_one_demand(int n, double density, Rng& rng) {
  if (density < 0 || density > 1)
    throw ValidationError("density must lie in [0, 1]");
  Demand d;
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      if (s != t && rng.next_double() < density) d.set(s, t, 1.0);
  return d;
}

}  // namespace soro
