#ifndef PPFA_TEST_HELPERS_HPP
#define PPFA_TEST_HELPERS_HPP

#include <string>
#include <vector>

#include "ppfa/automata.hpp"

namespace ppfa::test {

inline Distribution dist(std::vector<std::pair<std::string, std::string>> entries) {
  Distribution d;
  for (auto& [n, w] : entries) d.weights[n] = parse_prob(w);
  return d;
}

inline Distribution point(const std::string& n) { return dist({{n, "1"}}); }

/// Example 1's A: two starts, s1 --a--> t1 and s2 --b--> t2.
inline Fa example1_a() {
  Fa a;
  a.nodes = {"s1", "s2", "t1", "t2"};
  a.alphabet = {"a", "b"};
  a.starts = {"s1", "s2"};
  a.transitions = {{"s1", "a", "t1"}, {"s2", "b", "t2"}};
  return a;
}

/// Example 1's B (per its diagram): s --c--> t.
inline Fa example1_b(const std::string& action = "c") {
  Fa b;
  b.nodes = {"s", "t"};
  b.alphabet = {action};
  b.starts = {"s"};
  b.transitions = {{"s", action, "t"}};
  return b;
}

/// Single-action chain a1.a2. ... .stop as a Pfa.
inline Pfa chain(const std::vector<std::string>& actions) {
  Pfa p;
  std::string prev = "k0";
  p.nodes.insert(prev);
  p.start[prev] = SymProb::one();
  for (size_t i = 0; i < actions.size(); ++i) {
    std::string next = "k" + std::to_string(i + 1);
    p.nodes.insert(next);
    p.alphabet.insert(actions[i]);
    p.transitions.push_back({prev, actions[i], point(next)});
    prev = next;
  }
  return p;
}

inline Fa fa_chain(const std::vector<std::string>& actions) {
  Fa a;
  std::string prev = "k0";
  a.nodes.insert(prev);
  a.starts.insert(prev);
  for (size_t i = 0; i < actions.size(); ++i) {
    std::string next = "k" + std::to_string(i + 1);
    a.nodes.insert(next);
    if (actions[i] != kTau) a.alphabet.insert(actions[i]);
    a.transitions.insert({prev, actions[i], next});
    prev = next;
  }
  return a;
}

}  // namespace ppfa::test

#endif
