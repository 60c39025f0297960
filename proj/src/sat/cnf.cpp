#include <algorithm>

#include "saga/sat.hpp"

namespace saga::sat {

int CnfFormula::fresh_vars(int count, std::string_view probe_name) {
  if (count < 0) throw InternalError("negative variable count");
  const int first = num_vars_ + 1;
  if (!probe_name.empty()) {
    if (probes_.count(probe_name)) throw InternalError("duplicate probe name '" + std::string(probe_name) + "'");
    probes_.emplace(std::string(probe_name), Probe{first, count});
  }
  num_vars_ += count;
  return first;
}

const Probe* CnfFormula::probe(std::string_view name) const {
  auto it = probes_.find(name);
  return it == probes_.end() ? nullptr : &it->second;
}

void CnfFormula::add_clause(std::span<const Lit> lits) {
  scratch_.clear();
  for (Lit l : lits) {
    if (l == kTrue) return;
    if (l == kFalse) continue;
    if (l == 0 || var_of(l) > num_vars_) throw InternalError("literal " + std::to_string(l) + " is not a variable");
    scratch_.push_back(l);
  }
  if (scratch_.empty()) has_empty_clause_ = true;
  starts_.push_back(static_cast<std::uint32_t>(lits_.size()));
  lits_.insert(lits_.end(), scratch_.begin(), scratch_.end());
}

std::span<const Lit> CnfFormula::clause(std::size_t i) const {
  const std::size_t begin = starts_[i];
  const std::size_t end = i + 1 < starts_.size() ? starts_[i + 1] : lits_.size();
  return {lits_.data() + begin, end - begin};
}

Lit make_and(CnfFormula& f, Lit a, Lit b) {
  if (a == kFalse || b == kFalse || a == -b) return kFalse;
  if (a == kTrue || a == b) return b;
  if (b == kTrue) return a;
  const Lit x = f.new_var();
  f.add_clause({-x, a});
  f.add_clause({-x, b});
  f.add_clause({x, -a, -b});
  return x;
}

Lit make_or(CnfFormula& f, Lit a, Lit b) { return -make_and(f, -a, -b); }

Lit make_xor(CnfFormula& f, Lit a, Lit b) {
  if (a == kFalse) return b;
  if (b == kFalse) return a;
  if (a == kTrue) return -b;
  if (b == kTrue) return -a;
  if (a == b) return kFalse;
  if (a == -b) return kTrue;
  const Lit x = f.new_var();
  f.add_clause({-x, a, b});
  f.add_clause({-x, -a, -b});
  f.add_clause({x, -a, b});
  f.add_clause({x, a, -b});
  return x;
}

Lit make_equal(CnfFormula& f, Lit a, Lit b) { return -make_xor(f, a, b); }

Lit make_ite(CnfFormula& f, Lit c, Lit t, Lit e) {
  if (c == kTrue) return t;
  if (c == kFalse) return e;
  if (t == e) return t;
  if (t == kTrue) return make_or(f, c, e);
  if (t == kFalse) return make_and(f, -c, e);
  if (e == kTrue) return make_or(f, -c, t);
  if (e == kFalse) return make_and(f, c, t);
  if (t == -e) return make_equal(f, c, t);
  const Lit x = f.new_var();
  f.add_clause({-c, -x, t});
  f.add_clause({-c, x, -t});
  f.add_clause({c, -x, e});
  f.add_clause({c, x, -e});
  // redundant, helps propagation when both branches agree
  f.add_clause({-t, -e, x});
  f.add_clause({t, e, -x});
  return x;
}

Lit make_and(CnfFormula& f, std::span<const Lit> inputs) {
  std::vector<Lit> in;
  in.reserve(inputs.size());
  for (Lit l : inputs) {
    if (l == kFalse) return kFalse;
    if (l != kTrue) in.push_back(l);
  }
  std::sort(in.begin(), in.end());
  in.erase(std::unique(in.begin(), in.end()), in.end());
  for (std::size_t i = 0; i + 1 < in.size(); ++i)
    if (std::binary_search(in.begin() + static_cast<std::ptrdiff_t>(i) + 1, in.end(), -in[i])) return kFalse;
  if (in.empty()) return kTrue;
  if (in.size() == 1) return in[0];
  if (in.size() == 2) return make_and(f, in[0], in[1]);
  const Lit x = f.new_var();
  std::vector<Lit> big{x};
  for (Lit l : in) {
    f.add_clause({-x, l});
    big.push_back(-l);
  }
  f.add_clause(big);
  return x;
}

Lit make_or(CnfFormula& f, std::span<const Lit> inputs) {
  std::vector<Lit> negated(inputs.begin(), inputs.end());
  for (Lit& l : negated) l = -l;
  return -make_and(f, negated);
}

const char* status_name(Status s) {
  switch (s) {
    case Status::kSat: return "SAT";
    case Status::kUnsat: return "UNSAT";
    case Status::kUnknown: return "UNKNOWN";
  }
  return "?";
}

bool SolveResult::value(Lit l) const {
  if (l == kTrue) return true;
  if (l == kFalse) return false;
  const auto v = static_cast<std::size_t>(var_of(l));
  const bool b = v < model.size() && model[v];
  return l > 0 ? b : !b;
}

std::optional<std::size_t> find_violated_clause(const CnfFormula& f, const std::vector<bool>& model) {
  for (std::size_t i = 0; i < f.num_clauses(); ++i) {
    bool satisfied = false;
    for (Lit l : f.clause(i)) {
      const auto v = static_cast<std::size_t>(var_of(l));
      const bool b = v < model.size() && model[v];
      if (l > 0 ? b : !b) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) return i;
  }
  return std::nullopt;
}

}  // namespace saga::sat
