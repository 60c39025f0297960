#include <algorithm>
#include <cmath>

#include "saga/sat.hpp"

namespace saga::sat {

namespace {

// Internal literal code: 2 * var + sign, vars 0-based.
using Code = std::uint32_t;
constexpr std::uint32_t kNoReason = 0xffffffffU;

inline Code encode(Lit l) { return l > 0 ? static_cast<Code>(2 * (l - 1)) : static_cast<Code>(2 * (-l - 1) + 1); }

double luby(double y, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

struct Clause {
  std::vector<Code> lits;
  double activity = 0;
  bool learnt = false;
  bool deleted = false;
};

struct Watch {
  std::uint32_t cref;
  Code blocker;
};

}  // namespace

class Solver::Impl {
 public:
  explicit Impl(const CnfFormula& f) {
    const auto n = static_cast<std::size_t>(f.num_vars());
    assigns_.assign(n, 0);
    level_.assign(n, 0);
    reason_.assign(n, kNoReason);
    activity_.assign(n, 0.0);
    phase_.assign(n, 1);
    seen_.assign(n, 0);
    heap_pos_.assign(n, -1);
    watches_.resize(2 * n);
    for (std::size_t v = 0; v < n; ++v) heap_insert(static_cast<int>(v));

    std::vector<Code> lits;
    for (std::size_t i = 0; i < f.num_clauses() && ok_; ++i) {
      lits.clear();
      for (Lit l : f.clause(i)) lits.push_back(encode(l));
      add_original(lits);
    }
    num_original_ = clauses_.size();
  }

  SolveResult solve(std::span<const Lit> assumptions, const SolverOptions& options) {
    SolveResult result;
    cancel_until(0);
    if (!ok_ || propagate() != kNoReason) {
      ok_ = false;
      result.status = Status::kUnsat;
      return result;
    }
    assumptions_.clear();
    for (Lit a : assumptions) {
      if (is_constant(a)) {
        if (a == kFalse) {
          result.status = Status::kUnsat;
          return result;
        }
        continue;
      }
      if (static_cast<std::size_t>(var_of(a)) > assigns_.size()) throw InternalError("assumption on unknown variable");
      assumptions_.push_back(encode(a));
    }

    const std::int64_t start_conflicts = conflicts_;
    const std::int64_t start_decisions = decisions_;
    learnt_limit_ = std::max<double>(static_cast<double>(num_original_) / 3.0, 2000.0);
    Status status = Status::kUnknown;
    for (int restart = 0; status == Status::kUnknown; ++restart) {
      const auto limit = static_cast<std::int64_t>(luby(2.0, restart) * 100.0);
      std::int64_t budget_left = -1;
      if (options.conflict_budget >= 0) {
        budget_left = options.conflict_budget - (conflicts_ - start_conflicts);
        if (budget_left <= 0) break;
      }
      status = search(budget_left >= 0 ? std::min(limit, budget_left) : limit);
      if (status == Status::kUnknown && options.conflict_budget >= 0 &&
          conflicts_ - start_conflicts >= options.conflict_budget)
        break;
    }

    result.status = status;
    result.conflicts = conflicts_ - start_conflicts;
    result.decisions = decisions_ - start_decisions;
    if (status == Status::kSat) {
      result.model.assign(assigns_.size() + 1, false);
      for (std::size_t v = 0; v < assigns_.size(); ++v) result.model[v + 1] = assigns_[v] > 0;
    }
    cancel_until(0);
    return result;
  }

 private:
  int value(Code c) const {
    const int a = assigns_[c >> 1];
    return (c & 1U) ? -a : a;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Code c, std::uint32_t reason) {
    const std::size_t v = c >> 1;
    assigns_[v] = (c & 1U) ? -1 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(c);
  }

  void add_original(std::vector<Code>& lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::vector<Code> kept;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (i + 1 < lits.size() && (lits[i] ^ 1U) == lits[i + 1]) return;  // tautology
      const int val = value(lits[i]);
      if (val > 0) return;
      if (val == 0) kept.push_back(lits[i]);
    }
    if (kept.empty()) {
      ok_ = false;
      return;
    }
    if (kept.size() == 1) {
      enqueue(kept[0], kNoReason);
      if (propagate() != kNoReason) ok_ = false;
      return;
    }
    attach(store(std::move(kept), false));
  }

  std::uint32_t store(std::vector<Code> lits, bool learnt) {
    Clause c;
    c.lits = std::move(lits);
    c.learnt = learnt;
    clauses_.push_back(std::move(c));
    return static_cast<std::uint32_t>(clauses_.size() - 1);
  }

  void attach(std::uint32_t cref) {
    const Clause& c = clauses_[cref];
    watches_[c.lits[0]].push_back({cref, c.lits[1]});
    watches_[c.lits[1]].push_back({cref, c.lits[0]});
  }

  // Returns the conflicting clause or kNoReason.
  std::uint32_t propagate() {
    std::uint32_t conflict = kNoReason;
    while (qhead_ < trail_.size()) {
      const Code false_lit = trail_[qhead_++] ^ 1U;
      std::vector<Watch>& ws = watches_[false_lit];
      std::size_t i = 0;
      std::size_t j = 0;
      while (i < ws.size()) {
        const Watch w = ws[i];
        if (value(w.blocker) > 0) {
          ws[j++] = ws[i++];
          continue;
        }
        Clause& c = clauses_[w.cref];
        ++i;
        if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
        const Code first = c.lits[0];
        if (first != w.blocker && value(first) > 0) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.lits.size(); ++k) {
          if (value(c.lits[k]) >= 0) {
            std::swap(c.lits[1], c.lits[k]);
            watches_[c.lits[1]].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (value(first) < 0) {
          conflict = w.cref;
          qhead_ = trail_.size();
          while (i < ws.size()) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (conflict != kNoReason) break;
    }
    return conflict;
  }

  void bump_var(std::size_t v) {
    if ((activity_[v] += var_inc_) > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    if (heap_pos_[v] >= 0) heap_up(heap_pos_[v]);
  }

  void bump_clause(Clause& c) {
    if ((c.activity += clause_inc_) > 1e20) {
      for (Clause& d : clauses_)
        if (d.learnt) d.activity *= 1e-20;
      clause_inc_ *= 1e-20;
    }
  }

  // First-UIP analysis; returns the learnt clause with the asserting literal
  // first and the backtrack level.
  std::pair<std::vector<Code>, int> analyze(std::uint32_t conflict) {
    std::vector<Code> learnt{0};
    int path = 0;
    Code p = 0;
    bool have_p = false;
    std::size_t index = trail_.size();
    do {
      Clause& c = clauses_[conflict];
      if (c.learnt) bump_clause(c);
      for (std::size_t j = have_p ? 1 : 0; j < c.lits.size(); ++j) {
        const Code q = c.lits[j];
        const std::size_t v = q >> 1;
        if (seen_[v] || level_[v] == 0) continue;
        bump_var(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
      while (!seen_[trail_[--index] >> 1]) {
      }
      p = trail_[index];
      have_p = true;
      conflict = reason_[p >> 1];
      seen_[p >> 1] = 0;
      --path;
    } while (path > 0);
    learnt[0] = p ^ 1U;

    // Drop literals implied by the rest of the clause through their reason.
    std::vector<Code> to_clear(learnt.begin() + 1, learnt.end());
    std::size_t kept = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      const std::uint32_t r = reason_[learnt[i] >> 1];
      bool redundant = r != kNoReason;
      if (redundant) {
        const Clause& c = clauses_[r];
        for (std::size_t k = 1; k < c.lits.size(); ++k) {
          const std::size_t v = c.lits[k] >> 1;
          if (!seen_[v] && level_[v] > 0) {
            redundant = false;
            break;
          }
        }
      }
      if (!redundant) learnt[kept++] = learnt[i];
    }
    learnt.resize(kept);
    for (Code c : to_clear) seen_[c >> 1] = 0;

    int back = 0;
    if (learnt.size() > 1) {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i)
        if (level_[learnt[i] >> 1] > level_[learnt[max_i] >> 1]) max_i = i;
      std::swap(learnt[1], learnt[max_i]);
      back = level_[learnt[1] >> 1];
    }
    return {std::move(learnt), back};
  }

  void cancel_until(int level) {
    if (decision_level() <= level) return;
    for (std::size_t c = trail_.size(); c-- > trail_lim_[static_cast<std::size_t>(level)];) {
      const std::size_t v = trail_[c] >> 1;
      phase_[v] = static_cast<std::int8_t>((trail_[c] & 1U) ? 1 : 0);
      assigns_[v] = 0;
      reason_[v] = kNoReason;
      if (heap_pos_[v] < 0) heap_insert(static_cast<int>(v));
    }
    trail_.resize(trail_lim_[static_cast<std::size_t>(level)]);
    qhead_ = trail_.size();
    trail_lim_.resize(static_cast<std::size_t>(level));
  }

  bool locked(std::uint32_t cref) const {
    const Clause& c = clauses_[cref];
    const std::size_t v = c.lits[0] >> 1;
    return value(c.lits[0]) > 0 && reason_[v] == cref;
  }

  void reduce_learnts() {
    std::vector<std::uint32_t> learnts;
    for (std::uint32_t i = 0; i < clauses_.size(); ++i)
      if (clauses_[i].learnt) learnts.push_back(i);
    std::sort(learnts.begin(), learnts.end(), [&](std::uint32_t a, std::uint32_t b) {
      const Clause& x = clauses_[a];
      const Clause& y = clauses_[b];
      if ((x.lits.size() > 2) != (y.lits.size() > 2)) return x.lits.size() > 2;
      return x.activity < y.activity;
    });
    for (std::size_t i = 0; i < learnts.size() / 2; ++i) {
      Clause& c = clauses_[learnts[i]];
      if (c.lits.size() > 2 && !locked(learnts[i])) c.deleted = true;
    }

    // Compact storage and rebuild watches.
    std::vector<std::uint32_t> remap(clauses_.size(), kNoReason);
    std::vector<Clause> kept;
    kept.reserve(clauses_.size());
    for (std::uint32_t i = 0; i < clauses_.size(); ++i) {
      if (clauses_[i].deleted) continue;
      remap[i] = static_cast<std::uint32_t>(kept.size());
      kept.push_back(std::move(clauses_[i]));
    }
    clauses_ = std::move(kept);
    for (Code c : trail_) {
      std::uint32_t& r = reason_[c >> 1];
      if (r != kNoReason) r = remap[r];
    }
    for (auto& ws : watches_) ws.clear();
    for (std::uint32_t i = 0; i < clauses_.size(); ++i) attach(i);
    num_learnts_ = 0;
    for (const Clause& c : clauses_) num_learnts_ += c.learnt ? 1 : 0;
  }

  Status search(std::int64_t conflict_limit) {
    std::int64_t local = 0;
    while (true) {
      const std::uint32_t conflict = propagate();
      if (conflict != kNoReason) {
        ++conflicts_;
        ++local;
        if (decision_level() == 0) {
          ok_ = false;
          return Status::kUnsat;
        }
        auto [learnt, back] = analyze(conflict);
        cancel_until(back);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          const std::uint32_t cref = store(std::move(learnt), true);
          attach(cref);
          bump_clause(clauses_[cref]);
          ++num_learnts_;
          enqueue(clauses_[cref].lits[0], cref);
        }
        var_inc_ /= 0.95;
        clause_inc_ /= 0.999;
        continue;
      }

      if (local >= conflict_limit) {
        cancel_until(0);
        return Status::kUnknown;
      }
      if (static_cast<double>(num_learnts_) - static_cast<double>(trail_.size()) >= learnt_limit_) {
        reduce_learnts();
        learnt_limit_ *= 1.1;
      }

      Code next = 0;
      bool have_next = false;
      while (static_cast<std::size_t>(decision_level()) < assumptions_.size()) {
        const Code a = assumptions_[static_cast<std::size_t>(decision_level())];
        if (value(a) > 0) {
          trail_lim_.push_back(trail_.size());
        } else if (value(a) < 0) {
          return Status::kUnsat;
        } else {
          next = a;
          have_next = true;
          break;
        }
      }
      if (!have_next) {
        int v = -1;
        while (!heap_.empty()) {
          v = heap_pop();
          if (assigns_[static_cast<std::size_t>(v)] == 0) break;
          v = -1;
        }
        if (v < 0) return Status::kSat;
        next = static_cast<Code>(2 * v) + (phase_[static_cast<std::size_t>(v)] ? 1U : 0U);
        ++decisions_;
      }
      trail_lim_.push_back(trail_.size());
      enqueue(next, kNoReason);
    }
  }

  // ---- activity heap -------------------------------------------------------------

  bool heap_less(int a, int b) const {
    return activity_[static_cast<std::size_t>(a)] > activity_[static_cast<std::size_t>(b)];
  }

  void heap_insert(int v) {
    heap_pos_[static_cast<std::size_t>(v)] = static_cast<int>(heap_.size());
    heap_.push_back(v);
    heap_up(heap_pos_[static_cast<std::size_t>(v)]);
  }

  void heap_up(int i) {
    const int v = heap_[static_cast<std::size_t>(i)];
    while (i > 0) {
      const int parent = (i - 1) / 2;
      if (!heap_less(v, heap_[static_cast<std::size_t>(parent)])) break;
      heap_[static_cast<std::size_t>(i)] = heap_[static_cast<std::size_t>(parent)];
      heap_pos_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(i)])] = i;
      i = parent;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_pos_[static_cast<std::size_t>(v)] = i;
  }

  void heap_down(int i) {
    const int n = static_cast<int>(heap_.size());
    const int v = heap_[static_cast<std::size_t>(i)];
    while (2 * i + 1 < n) {
      int child = 2 * i + 1;
      if (child + 1 < n && heap_less(heap_[static_cast<std::size_t>(child + 1)], heap_[static_cast<std::size_t>(child)]))
        ++child;
      if (!heap_less(heap_[static_cast<std::size_t>(child)], v)) break;
      heap_[static_cast<std::size_t>(i)] = heap_[static_cast<std::size_t>(child)];
      heap_pos_[static_cast<std::size_t>(heap_[static_cast<std::size_t>(i)])] = i;
      i = child;
    }
    heap_[static_cast<std::size_t>(i)] = v;
    heap_pos_[static_cast<std::size_t>(v)] = i;
  }

  int heap_pop() {
    const int top = heap_.front();
    heap_pos_[static_cast<std::size_t>(top)] = -1;
    const int last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_[0] = last;
      heap_pos_[static_cast<std::size_t>(last)] = 0;
      heap_down(0);
    }
    return top;
  }

  std::vector<Clause> clauses_;
  std::vector<std::vector<Watch>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<double> activity_;
  std::vector<std::int8_t> phase_;  // 1: last value was false
  std::vector<char> seen_;
  std::vector<int> heap_;
  std::vector<int> heap_pos_;
  std::vector<Code> trail_;
  std::vector<std::size_t> trail_lim_;
  std::vector<Code> assumptions_;
  std::size_t qhead_ = 0;
  std::size_t num_original_ = 0;
  std::size_t num_learnts_ = 0;
  double learnt_limit_ = 0;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::int64_t conflicts_ = 0;
  std::int64_t decisions_ = 0;
  bool ok_ = true;
};

Solver::Solver(const CnfFormula& formula) : impl_(new Impl(formula)) {}
Solver::~Solver() { delete impl_; }

SolveResult Solver::solve(std::span<const Lit> assumptions, const SolverOptions& options) {
  return impl_->solve(assumptions, options);
}

}  // namespace saga::sat
