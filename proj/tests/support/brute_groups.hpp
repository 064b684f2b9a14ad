#ifndef MALLE_TESTS_BRUTE_GROUPS_HPP
#define MALLE_TESTS_BRUTE_GROUPS_HPP

// Test-only counts for small abelian groups Z/a x Z/b.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace brute {

// Every subgroup of Z/a x Z/b is generated by two elements.
inline std::size_t subgroup_count(int a, int b) {
  std::set<std::vector<int>> subs;
  for (int x = 0; x < a * b; ++x) {
    for (int y = 0; y < a * b; ++y) {
      std::vector<char> in(a * b, 0);
      for (int i = 0; i < a * b; ++i)
        for (int j = 0; j < a * b; ++j) {
          const int u = (i * (x / b) + j * (y / b)) % a;
          const int v = (i * (x % b) + j * (y % b)) % b;
          in[u * b + v] = 1;
        }
      std::vector<int> members;
      for (int e = 0; e < a * b; ++e)
        if (in[e])
          members.push_back(e);
      subs.insert(members);
    }
  }
  return subs.size();
}

} // namespace brute

#endif // MALLE_TESTS_BRUTE_GROUPS_HPP
