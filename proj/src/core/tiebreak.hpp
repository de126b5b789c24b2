#pragma once

namespace mps {

// Index of the lexicographically largest key among eligible indices in
// [0, count); ties go to the lowest index (the canonical ordinal). -1 if no
// index is eligible. Shared by every search algorithm and the oracle.
template <class KeyFn, class EligibleFn>
int lex_argmax(int count, KeyFn key, EligibleFn eligible) {
  int best = -1;
  decltype(key(0)) best_key{};
  for (int i = 0; i < count; ++i) {
    if (!eligible(i)) continue;
    auto k = key(i);
    if (best < 0 || best_key < k) {
      best = i;
      best_key = k;
    }
  }
  return best;
}

template <class KeyFn>
int lex_argmax(int count, KeyFn key) {
  return lex_argmax(count, key, [](int) { return true; });
}

}  // namespace mps
