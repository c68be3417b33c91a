#pragma once

#include <string>
#include <vector>

#include "secrelay/common.hpp"

namespace secrelay {

// Dense joint probability mass function over named finite variables.
// Storage is row-major with the last variable fastest.
class JointPmf {
 public:
  JointPmf() = default;
  JointPmf(std::vector<std::string> names, std::vector<int> cards, std::vector<double> probs);

  // One row per outcome tuple, last column the probability.
  static JointPmf load_csv(const std::string& path);
  void save_csv(const std::string& path) const;

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& cards() const { return cards_; }
  const std::vector<double>& probs() const { return p_; }
  std::size_t size() const { return p_.size(); }

  int index_of(const std::string& name) const;  // -1 when absent
  bool has(const std::string& name) const { return index_of(name) >= 0; }
  int card(const std::string& name) const;

  double prob(const std::vector<int>& outcome) const;

  // Marginal over the kept variables (order preserved as given).
  JointPmf marginal(const std::vector<std::string>& keep) const;

  // Entropy in bits of the marginal over vars (0 log 0 = 0).
  double entropy(const std::vector<std::string>& vars) const;
  double entropy_all() const;

 private:
  std::vector<std::string> names_;
  std::vector<int> cards_;
  std::vector<std::size_t> strides_;
  std::vector<double> p_;

  void rebuild_strides();
  void validate() const;
};

// Conditional law P(targets | givens) stored as stochastic rows.
class CondPmf {
 public:
  CondPmf() = default;
  CondPmf(std::vector<std::string> given_names, std::vector<int> given_cards,
          std::vector<std::string> target_names, std::vector<int> target_cards,
          std::vector<double> table);

  // CSV columns: given variables, then target variables, then the value.
  static CondPmf load_csv(const std::string& path, std::size_t n_given);

  const std::vector<std::string>& given_names() const { return given_names_; }
  const std::vector<std::string>& target_names() const { return target_names_; }
  const std::vector<int>& given_cards() const { return given_cards_; }
  const std::vector<int>& target_cards() const { return target_cards_; }

  double value(const std::vector<int>& given, const std::vector<int>& target) const;

  // P(target | given) with the conditioning variable marginalized out:
  // sum_w P(w|given) P(target|given, w).  `mix` must condition exactly on
  // given_names() of this law minus `drop`.
  CondPmf marginalize_given(const CondPmf& mix, const std::string& drop) const;

 private:
  std::vector<std::string> given_names_, target_names_;
  std::vector<int> given_cards_, target_cards_;
  std::vector<double> table_;  // indexed by (given, target), target fastest
  std::size_t target_block_ = 1;

  friend JointPmf compose(const JointPmf&, const CondPmf&);
  void validate() const;
};

// Joint over base's variables plus cond's targets:
// p(base) * q(targets | givens), where cond's givens must appear in base.
JointPmf compose(const JointPmf& base, const CondPmf& cond);

// I(A;B) in bits.  Groups must be disjoint, nonempty subsets of p's
// variables; overlap is a usage error.
double mutual_information(const JointPmf& p, const std::vector<std::string>& group_a,
                          const std::vector<std::string>& group_b);

// I(A;B|C) in bits; empty C reduces to mutual_information.
double conditional_mutual_information(const JointPmf& p, const std::vector<std::string>& group_a,
                                      const std::vector<std::string>& group_b,
                                      const std::vector<std::string>& cond);

}  // namespace secrelay
