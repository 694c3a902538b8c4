#pragma once

#include <string>
#include <vector>

#include "soro/graph.hpp"
#include "soro/rng.hpp"

namespace soro {

struct DemandEntry {
  int s, t;
  double amount;
};

// Sparse demand matrix. Entries are kept in insertion order (file round
// trips preserve line order), amounts are strictly positive, and the
// diagonal is empty. Dense n^2 storage is never allocated.
class Demand {
 public:
  Demand() = default;

  // amount <= 0 erases the entry.
  void set(int s, int t, double amount);
  void add(int s, int t, double amount);
  double amount(int s, int t) const;  // 0 when absent
  bool contains(int s, int t) const;

  const std::vector<DemandEntry>& entries() const { return entries_; }
  int support_size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  // Sum of all amounts.
  double size() const;

  Demand scaled(double factor) const;

 private:
  int find(int s, int t) const;
  std::vector<DemandEntry> entries_;
};

// a(s,t) <= b(s,t) + tol for every pair.
bool dominated_by(const Demand& a, const Demand& b, double tol = 1e-9);

struct DemandClass {
  bool integral = false;
  bool zero_one = false;
  bool permutation = false;
  bool alpha_special = false;
  int alpha = 0;
};

// Which special families the demand belongs to, with 1e-9 tolerance.
// alpha-special means every entry equals alpha + min_cut(g, s, t).
DemandClass classify(const Demand& d, const Graph& g, int alpha);

// Text format: one entry per line, "<s> <t> <amount>", 1-based endpoints.
// Repeated (s,t) lines accumulate.
Demand load_demand(const std::string& text);
std::string save_demand(const Demand& d);
Demand load_demand_file(const std::string& path);
void save_demand_file(const Demand& d, const std::string& path);

// Unit demand along a uniform random permutation of [0, n), fixed points
// dropped; redrawn (deterministically) if every point is fixed.
Demand random_permutation_demand(int n, Rng& rng);

// Each ordered pair gets amount 1 independently with probability density.
Demand random_zero_one_demand(int n, double density, Rng& rng);

}  // namespace soro
