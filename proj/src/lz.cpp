#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qtraj/metrics.hpp"

namespace qtraj {

namespace {

// Online suffix automaton over a small integer alphabet.
class SuffixAutomaton {
 public:
  struct Split {
    int original = -1;  // state that lost its short strings
    int clone = -1;     // state that now holds them
  };

  SuffixAutomaton(std::size_t max_len, int alphabet) : k_(alphabet) {
    const std::size_t cap = 2 * max_len + 2;
    len_.reserve(cap);
    link_.reserve(cap);
    next_.reserve(cap * static_cast<std::size_t>(k_));
    new_state(0, -1);
  }

  int root() const { return 0; }
  int length(int state) const { return len_[state]; }
  int transition(int state, int c) const { return next_[idx(state, c)]; }

  Split extend(int c) {
    const int cur = new_state(len_[last_] + 1, -1);
    int p = last_;
    while (p != -1 && next_[idx(p, c)] == -1) {
      next_[idx(p, c)] = cur;
      p = link_[p];
    }
    Split split;
    if (p == -1) {
      link_[cur] = 0;
    } else {
      const int q = next_[idx(p, c)];
      if (len_[p] + 1 == len_[q]) {
        link_[cur] = q;
      } else {
        const int clone = new_state(len_[p] + 1, link_[q]);
        for (int a = 0; a < k_; ++a) next_[idx(clone, a)] = next_[idx(q, a)];
        while (p != -1 && next_[idx(p, c)] == q) {
          next_[idx(p, c)] = clone;
          p = link_[p];
        }
        link_[q] = clone;
        link_[cur] = clone;
        split = {q, clone};
      }
    }
    last_ = cur;
    return split;
  }

 private:
  std::size_t idx(int state, int c) const {
    return static_cast<std::size_t>(state) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c);
  }

  int new_state(int len, int link) {
    len_.push_back(len);
    link_.push_back(link);
    next_.insert(next_.end(), static_cast<std::size_t>(k_), -1);
    return static_cast<int>(len_.size()) - 1;
  }

  int k_;
  int last_ = 0;
  std::vector<int> len_;
  std::vector<int> link_;
  std::vector<int> next_;
};

}  // namespace

std::int64_t lz_complexity(std::span<const std::uint8_t> s, int alphabet_size) {
  if (s.empty()) throw std::invalid_argument("lz_complexity: empty sequence");
  if (alphabet_size < 2 || alphabet_size > 256) throw std::invalid_argument("lz_complexity: alphabet size out of range");
  const std::size_t n = s.size();

  // The automaton always holds s[0 .. i + l - 1]. (match, l) is the state of
  // the current match s[i .. i + l - 1], which by construction occurs with a
  // start before i. Extending the automaton can split that state; the split
  // is tracked so the match never has to be re-walked from the root.
  SuffixAutomaton sam(n, alphabet_size);
  std::int64_t phrases = 0;
  std::size_t i = 0;
  std::size_t l = 0;
  int match = sam.root();
  while (true) {
    if (i + l == n) {  // unfinished last phrase
      ++phrases;
      break;
    }
    const int c = s[i + l];
    if (c >= alphabet_size) throw std::invalid_argument("lz_complexity: symbol outside alphabet");
    const int next = sam.transition(match, c);
    const SuffixAutomaton::Split split = sam.extend(c);
    if (next != -1) {
      ++l;
      match = next;
      if (split.original == match && static_cast<int>(l) <= sam.length(split.clone)) match = split.clone;
    } else {
      ++phrases;
      i += l + 1;
      l = 0;
      match = sam.root();
      if (i == n) break;
    }
  }
  return phrases;
}

std::int64_t lz_complexity(const SymbolSequence& seq) { return lz_complexity(seq.symbols(), seq.alphabet_size()); }

double normalized_lz(std::span<const std::uint8_t> symbols, int alphabet_size) {
  if (symbols.size() < 2) throw std::invalid_argument("normalized_lz: sequence length must be >= 2");
  const double n = static_cast<double>(symbols.size());
  const double c = static_cast<double>(lz_complexity(symbols, alphabet_size));
  return c * (std::log(n) / std::log(static_cast<double>(alphabet_size))) / n;
}

double normalized_lz(const SymbolSequence& seq) { return normalized_lz(seq.symbols(), seq.alphabet_size()); }

}  // namespace qtraj
