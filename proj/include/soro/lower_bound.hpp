#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "soro/demand.hpp"
#include "soro/graph.hpp"
#include "soro/path.hpp"

namespace soro {

// Constructive attack on sparse path systems over two-star gadgets: pick the
// middle vertices every stored left->right path must cross, find a large set
// of left leaves whose paths concentrate on the same alpha middles, and
// match them to right leaves so the resulting permutation demand forces
// congestion k/alpha while an optimal routing achieves 1.

// For every (left leaf, right leaf) pair: the canonical hitting set f(s,t) —
// the first middle vertex of each stored path, padded with the
// smallest-index unused middles to exactly min(alpha, k) vertices, sorted.
// Requires every such pair to have at most alpha stored paths. copy
// addresses a gadget_g copy (0 = standalone gadget).
std::map<PairKey, std::vector<int>> hitting_sets(const PathSystem& p,
                                                 const Graph& g, int alpha,
                                                 int copy = 0);

struct AttackCertificate {
  Demand demand;                              // permutation demand, size k
  std::vector<int> hitting_set;               // S', sorted middle vertices
  std::vector<std::pair<int, int>> matching;  // (s_i, t_i), k entries
  int alpha = 0;
  int k = 0;
  int copy = 0;
  double claimed_ratio = 0;   // k / alpha
  double verified_ratio = 0;  // solver-measured congestion / integral optimum
  std::vector<std::string> warnings;
};

// Builds the attack: f(s) = most frequent f(s, .), S' = most frequent f(s)
// (ties to the lexicographically smallest set), A = the k smallest left
// leaves with f(s) = S', then a perfect matching of A into right leaves over
// pairs with f(s,t) = S'. Warns when k differs from floor(n^(1/(2 alpha))),
// where the pigeonhole guarantee lives; throws ValidationError with the
// pigeonhole counts if the matching cannot be completed.
AttackCertificate adversarial_demand(const PathSystem& p, const Graph& g,
                                     int alpha, int copy = 0);

struct CertificateCheck {
  bool ok = false;
  std::string failed;  // empty when ok; otherwise the first failing check
};

// Re-derives the certificate's guarantees: structural consistency, every
// stored path of a matched pair hits S', the explicit disjoint
// star-middle-star routing achieves congestion exactly 1 (each source's leaf
// edge forces optimum >= 1), and the system's best adaptive congestion is at
// least (1 - eps) * claimed_ratio.
CertificateCheck verify_certificate(const AttackCertificate& cert,
                                    const PathSystem& p, const Graph& g,
                                    double eps);

// Text record: ratios in full precision, vertices 1-based, warnings last.
std::string save_certificate(const AttackCertificate& cert);
AttackCertificate load_certificate(const std::string& text);
AttackCertificate load_certificate_file(const std::string& path);
void save_certificate_file(const AttackCertificate& cert,
                           const std::string& path);

}  // namespace soro
