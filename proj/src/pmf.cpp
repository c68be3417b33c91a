#include "secrelay/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace secrelay {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim whitespace
    auto b = field.find_first_not_of(" \t\r");
    auto e = field.find_last_not_of(" \t\r");
    fields.push_back(b == std::string::npos ? "" : field.substr(b, e - b + 1));
  }
  return fields;
}

double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

}  // namespace

JointPmf::JointPmf(std::vector<std::string> names, std::vector<int> cards,
                   std::vector<double> probs)
    : names_(std::move(names)), cards_(std::move(cards)), p_(std::move(probs)) {
  rebuild_strides();
  validate();
}

void JointPmf::rebuild_strides() {
  strides_.assign(cards_.size(), 1);
  for (int i = static_cast<int>(cards_.size()) - 2; i >= 0; --i)
    strides_[i] = strides_[i + 1] * static_cast<std::size_t>(cards_[i + 1]);
}

void JointPmf::validate() const {
  if (names_.size() != cards_.size()) throw std::invalid_argument("pmf: names/cards mismatch");
  std::size_t total = 1;
  for (int c : cards_) {
    if (c <= 0) throw std::invalid_argument("pmf: cardinalities must be positive");
    total *= static_cast<std::size_t>(c);
  }
  if (p_.size() != total) throw std::invalid_argument("pmf: probability table size mismatch");
  double sum = 0.0;
  for (double v : p_) {
    if (v < 0.0) throw std::invalid_argument("pmf: negative probability entry");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("pmf: probabilities sum to " + std::to_string(sum));
  for (std::size_t i = 0; i + 1 < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw std::invalid_argument("pmf: duplicate variable name " + names_[i]);
}

int JointPmf::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

int JointPmf::card(const std::string& name) const {
  int i = index_of(name);
  if (i < 0) throw std::invalid_argument("pmf: unknown variable " + name);
  return cards_[static_cast<std::size_t>(i)];
}

double JointPmf::prob(const std::vector<int>& outcome) const {
  if (outcome.size() != cards_.size()) throw std::invalid_argument("pmf: outcome arity mismatch");
  std::size_t idx = 0;
  for (std::size_t i = 0; i < outcome.size(); ++i) {
    if (outcome[i] < 0 || outcome[i] >= cards_[i])
      throw std::invalid_argument("pmf: outcome out of range");
    idx += strides_[i] * static_cast<std::size_t>(outcome[i]);
  }
  return p_[idx];
}

JointPmf JointPmf::marginal(const std::vector<std::string>& keep) const {
  std::vector<int> kept_axes;
  std::vector<int> kept_cards;
  for (const auto& name : keep) {
    int ax = index_of(name);
    if (ax < 0) throw std::invalid_argument("pmf: unknown variable " + name);
    kept_axes.push_back(ax);
    kept_cards.push_back(cards_[static_cast<std::size_t>(ax)]);
  }
  std::size_t out_size = 1;
  for (int c : kept_cards) out_size *= static_cast<std::size_t>(c);
  std::vector<std::size_t> out_strides(kept_axes.size(), 1);
  for (int i = static_cast<int>(kept_axes.size()) - 2; i >= 0; --i)
    out_strides[i] = out_strides[i + 1] * static_cast<std::size_t>(kept_cards[i + 1]);

  std::vector<double> out(out_size, 0.0);
  std::vector<int> idx(cards_.size(), 0);
  for (std::size_t flat = 0; flat < p_.size(); ++flat) {
    std::size_t oidx = 0;
    for (std::size_t k = 0; k < kept_axes.size(); ++k)
      oidx += out_strides[k] * static_cast<std::size_t>(idx[kept_axes[k]]);
    out[oidx] += p_[flat];
    for (int ax = static_cast<int>(cards_.size()) - 1; ax >= 0; --ax) {
      if (++idx[ax] < cards_[ax]) break;
      idx[ax] = 0;
    }
  }
  return JointPmf(keep, kept_cards, std::move(out));
}

double JointPmf::entropy(const std::vector<std::string>& vars) const {
  if (vars.size() == names_.size()) {
    bool all = true;
    for (const auto& v : vars)
      if (!has(v)) { all = false; break; }
    if (all) return entropy_all();
  }
  return marginal(vars).entropy_all();
}

double JointPmf::entropy_all() const {
  double h = 0.0;
  for (double v : p_) h -= plogp(v);
  return h;
}

JointPmf JointPmf::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open pmf file " + path);
  std::string line;
  if (!std::getline(in, line)) throw io_error("empty pmf file " + path);
  auto header = split_csv_line(line);
  if (header.size() < 2) throw io_error("pmf header needs at least one variable and a probability column: " + path);
  std::vector<std::string> names(header.begin(), header.end() - 1);

  std::vector<std::vector<int>> rows;
  std::vector<double> vals;
  std::vector<int> cards(names.size(), 0);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw io_error("pmf row arity mismatch in " + path + ": " + line);
    std::vector<int> outcome(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
      outcome[i] = std::stoi(fields[i]);
      if (outcome[i] < 0) throw io_error("pmf outcome indices must be >= 0 in " + path);
      cards[i] = std::max(cards[i], outcome[i] + 1);
    }
    rows.push_back(std::move(outcome));
    vals.push_back(std::stod(fields.back()));
  }
  std::size_t total = 1;
  for (int c : cards) {
    if (c == 0) throw io_error("pmf has an unused variable column in " + path);
    total *= static_cast<std::size_t>(c);
  }
  std::vector<double> probs(total, 0.0);
  std::vector<std::size_t> strides(names.size(), 1);
  for (int i = static_cast<int>(names.size()) - 2; i >= 0; --i)
    strides[i] = strides[i + 1] * static_cast<std::size_t>(cards[i + 1]);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < names.size(); ++i)
      idx += strides[i] * static_cast<std::size_t>(rows[r][i]);
    probs[idx] += vals[r];
  }
  return JointPmf(names, cards, std::move(probs));
}

void JointPmf::save_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write pmf file " + path);
  for (std::size_t i = 0; i < names_.size(); ++i) out << names_[i] << ',';
  out << "p\n";
  std::vector<int> idx(cards_.size(), 0);
  char buf[32];
  for (std::size_t flat = 0; flat < p_.size(); ++flat) {
    for (std::size_t i = 0; i < idx.size(); ++i) out << idx[i] << ',';
    std::snprintf(buf, sizeof buf, "%.17g", p_[flat]);
    out << buf << '\n';
    for (int ax = static_cast<int>(cards_.size()) - 1; ax >= 0; --ax) {
      if (++idx[ax] < cards_[ax]) break;
      idx[ax] = 0;
    }
  }
}

CondPmf::CondPmf(std::vector<std::string> given_names, std::vector<int> given_cards,
                 std::vector<std::string> target_names, std::vector<int> target_cards,
                 std::vector<double> table)
    : given_names_(std::move(given_names)),
      given_cards_(std::move(given_cards)),
      target_names_(std::move(target_names)),
      target_cards_(std::move(target_cards)),
      table_(std::move(table)) {
  target_block_ = 1;
  for (int c : target_cards_) target_block_ *= static_cast<std::size_t>(c);
  validate();
}

void CondPmf::validate() const {
  if (given_names_.size() != given_cards_.size() || target_names_.size() != target_cards_.size())
    throw std::invalid_argument("cond pmf: names/cards mismatch");
  if (target_names_.empty()) throw std::invalid_argument("cond pmf: no target variables");
  std::size_t rows = 1;
  for (int c : given_cards_) {
    if (c <= 0) throw std::invalid_argument("cond pmf: cardinalities must be positive");
    rows *= static_cast<std::size_t>(c);
  }
  for (int c : target_cards_)
    if (c <= 0) throw std::invalid_argument("cond pmf: cardinalities must be positive");
  if (table_.size() != rows * target_block_)
    throw std::invalid_argument("cond pmf: table size mismatch");
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t t = 0; t < target_block_; ++t) {
      double v = table_[r * target_block_ + t];
      if (v < 0.0) throw std::invalid_argument("cond pmf: negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("cond pmf: row " + std::to_string(r) + " sums to " +
                                  std::to_string(sum));
  }
}

double CondPmf::value(const std::vector<int>& given, const std::vector<int>& target) const {
  if (given.size() != given_cards_.size() || target.size() != target_cards_.size())
    throw std::invalid_argument("cond pmf: arity mismatch");
  std::size_t row = 0;
  for (std::size_t i = 0; i < given.size(); ++i)
    row = row * static_cast<std::size_t>(given_cards_[i]) + static_cast<std::size_t>(given[i]);
  std::size_t col = 0;
  for (std::size_t i = 0; i < target.size(); ++i)
    col = col * static_cast<std::size_t>(target_cards_[i]) + static_cast<std::size_t>(target[i]);
  return table_[row * target_block_ + col];
}

CondPmf CondPmf::load_csv(const std::string& path, std::size_t n_given) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open conditional pmf file " + path);
  std::string line;
  if (!std::getline(in, line)) throw io_error("empty conditional pmf file " + path);
  auto header = split_csv_line(line);
  if (header.size() < n_given + 2)
    throw io_error("conditional pmf header too short in " + path);
  std::size_t n_target = header.size() - 1 - n_given;
  std::vector<std::string> gnames(header.begin(), header.begin() + n_given);
  std::vector<std::string> tnames(header.begin() + n_given, header.end() - 1);

  std::vector<std::vector<int>> rows;
  std::vector<double> vals;
  std::vector<int> cards(n_given + n_target, 0);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw io_error("conditional pmf row arity mismatch in " + path);
    std::vector<int> outcome(cards.size());
    for (std::size_t i = 0; i < cards.size(); ++i) {
      outcome[i] = std::stoi(fields[i]);
      cards[i] = std::max(cards[i], outcome[i] + 1);
    }
    rows.push_back(std::move(outcome));
    vals.push_back(std::stod(fields.back()));
  }
  std::vector<int> gcards(cards.begin(), cards.begin() + n_given);
  std::vector<int> tcards(cards.begin() + n_given, cards.end());
  std::size_t nrows = 1, block = 1;
  for (int c : gcards) nrows *= static_cast<std::size_t>(c);
  for (int c : tcards) block *= static_cast<std::size_t>(c);
  std::vector<double> table(nrows * block, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::size_t row = 0, col = 0;
    for (std::size_t i = 0; i < n_given; ++i)
      row = row * static_cast<std::size_t>(gcards[i]) + static_cast<std::size_t>(rows[r][i]);
    for (std::size_t i = 0; i < n_target; ++i)
      col = col * static_cast<std::size_t>(tcards[i]) +
            static_cast<std::size_t>(rows[r][n_given + i]);
    table[row * block + col] += vals[r];
  }
  return CondPmf(gnames, gcards, tnames, tcards, std::move(table));
}

CondPmf CondPmf::marginalize_given(const CondPmf& mix, const std::string& drop) const {
  // this: P(targets | G, drop); mix: P(drop | G); result: P(targets | G)
  int drop_pos = -1;
  for (std::size_t i = 0; i < given_names_.size(); ++i)
    if (given_names_[i] == drop) drop_pos = static_cast<int>(i);
  if (drop_pos < 0) throw std::invalid_argument("marginalize_given: " + drop + " not conditioned on");
  if (mix.target_names_.size() != 1 || mix.target_names_[0] != drop)
    throw std::invalid_argument("marginalize_given: mixing law must produce " + drop);

  std::vector<std::string> keep_names;
  std::vector<int> keep_cards;
  for (std::size_t i = 0; i < given_names_.size(); ++i)
    if (static_cast<int>(i) != drop_pos) {
      keep_names.push_back(given_names_[i]);
      keep_cards.push_back(given_cards_[i]);
    }
  if (mix.given_names_ != keep_names)
    throw std::invalid_argument("marginalize_given: mixing law must condition on the kept givens");

  std::size_t keep_rows = 1;
  for (int c : keep_cards) keep_rows *= static_cast<std::size_t>(c);
  const int drop_card = given_cards_[static_cast<std::size_t>(drop_pos)];
  std::vector<double> table(keep_rows * target_block_, 0.0);

  std::vector<int> keep_idx(keep_cards.size(), 0);
  for (std::size_t kr = 0; kr < keep_rows; ++kr) {
    for (int w = 0; w < drop_card; ++w) {
      std::vector<int> full(given_cards_.size());
      for (std::size_t i = 0, k = 0; i < given_cards_.size(); ++i)
        full[i] = (static_cast<int>(i) == drop_pos) ? w : keep_idx[k++];
      std::size_t row = 0;
      for (std::size_t i = 0; i < full.size(); ++i)
        row = row * static_cast<std::size_t>(given_cards_[i]) + static_cast<std::size_t>(full[i]);
      const double pw = mix.table_[kr * static_cast<std::size_t>(drop_card) +
                                   static_cast<std::size_t>(w)];
      for (std::size_t t = 0; t < target_block_; ++t)
        table[kr * target_block_ + t] += pw * table_[row * target_block_ + t];
    }
    for (int ax = static_cast<int>(keep_cards.size()) - 1; ax >= 0; --ax) {
      if (++keep_idx[ax] < keep_cards[ax]) break;
      keep_idx[ax] = 0;
    }
  }
  return CondPmf(keep_names, keep_cards, target_names_, target_cards_, std::move(table));
}

JointPmf compose(const JointPmf& base, const CondPmf& cond) {
  std::vector<int> given_axes;
  for (const auto& g : cond.given_names_) {
    int ax = base.index_of(g);
    if (ax < 0) throw std::invalid_argument("compose: base pmf lacks variable " + g);
    given_axes.push_back(ax);
  }
  for (std::size_t i = 0; i < given_axes.size(); ++i)
    if (base.cards()[static_cast<std::size_t>(given_axes[i])] != cond.given_cards_[i])
      throw std::invalid_argument("compose: cardinality mismatch on " + cond.given_names_[i]);
  for (const auto& t : cond.target_names_)
    if (base.has(t)) throw std::invalid_argument("compose: variable " + t + " already present");

  std::vector<std::string> names = base.names();
  names.insert(names.end(), cond.target_names_.begin(), cond.target_names_.end());
  std::vector<int> cards = base.cards();
  cards.insert(cards.end(), cond.target_cards_.begin(), cond.target_cards_.end());

  const std::size_t block = cond.target_block_;
  std::vector<double> probs(base.size() * block);
  std::vector<int> idx(base.cards().size(), 0);
  for (std::size_t flat = 0; flat < base.size(); ++flat) {
    std::size_t row = 0;
    for (std::size_t i = 0; i < given_axes.size(); ++i)
      row = row * static_cast<std::size_t>(cond.given_cards_[i]) +
            static_cast<std::size_t>(idx[given_axes[i]]);
    const double pb = base.probs()[flat];
    for (std::size_t t = 0; t < block; ++t)
      probs[flat * block + t] = pb * cond.table_[row * block + t];
    for (int ax = static_cast<int>(idx.size()) - 1; ax >= 0; --ax) {
      if (++idx[ax] < base.cards()[ax]) break;
      idx[ax] = 0;
    }
  }
  return JointPmf(std::move(names), std::move(cards), std::move(probs));
}

namespace {

void check_groups(const JointPmf& p, const std::vector<std::string>& a,
                  const std::vector<std::string>& b, const std::vector<std::string>* c) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mutual information: empty group");
  auto check_known = [&](const std::vector<std::string>& g) {
    for (const auto& v : g)
      if (!p.has(v)) throw std::invalid_argument("mutual information: unknown variable " + v);
  };
  check_known(a);
  check_known(b);
  if (c) check_known(*c);
  auto overlaps = [](const std::vector<std::string>& x, const std::vector<std::string>& y) {
    for (const auto& v : x)
      if (std::find(y.begin(), y.end(), v) != y.end()) return true;
    return false;
  };
  if (overlaps(a, b) || (c && (overlaps(a, *c) || overlaps(b, *c))))
    throw std::invalid_argument("mutual information: variable groups overlap");
}

std::vector<std::string> joined(const std::vector<std::string>& x,
                                const std::vector<std::string>& y) {
  std::vector<std::string> out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

}  // namespace

double mutual_information(const JointPmf& p, const std::vector<std::string>& group_a,
                          const std::vector<std::string>& group_b) {
  check_groups(p, group_a, group_b, nullptr);
  return p.entropy(group_a) + p.entropy(group_b) - p.entropy(joined(group_a, group_b));
}

double conditional_mutual_information(const JointPmf& p, const std::vector<std::string>& group_a,
                                      const std::vector<std::string>& group_b,
                                      const std::vector<std::string>& cond) {
  if (cond.empty()) return mutual_information(p, group_a, group_b);
  check_groups(p, group_a, group_b, &cond);
  // I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
  return p.entropy(joined(group_a, cond)) + p.entropy(joined(group_b, cond)) -
         p.entropy(joined(joined(group_a, group_b), cond)) - p.entropy(cond);
}

}  // namespace secrelay
