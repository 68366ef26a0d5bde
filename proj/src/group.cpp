#include "hpc/group.hpp"

#include <string>

#include "hpc/error.hpp"

namespace hpc {

FiniteGroup FiniteGroup::from_table(const Table& table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorKind::NotAGroup, "empty table");
  for (int a = 0; a < n; ++a) {
    if (static_cast<int>(table[a].size()) != n)
      throw Error(ErrorKind::NotAGroup, "row " + std::to_string(a) + " has wrong length");
    for (int x : table[a])
      if (x < 0 || x >= n) throw Error(ErrorKind::NotAGroup, "entry out of range in row " + std::to_string(a));
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error(ErrorKind::NotAGroup, "associativity fails at (" + std::to_string(a) + "," +
                                                std::to_string(b) + "," + std::to_string(c) + ")");

  int identity = -1;
  for (int e = 0; e < n && identity < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
    if (ok) identity = e;
  }
  if (identity < 0) throw Error(ErrorKind::NotAGroup, "no identity element");

  std::vector<int> inverse(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      if (table[a][b] == identity && table[b][a] == identity) {
        inverse[a] = b;
        break;
      }
    if (inverse[a] < 0) throw Error(ErrorKind::NotAGroup, "element " + std::to_string(a) + " has no inverse");
  }

  FiniteGroup g;
  g.table_ = table;
  g.identity_ = identity;
  g.inverse_ = std::move(inverse);
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw Error(ErrorKind::NotAGroup, "cyclic group of order " + std::to_string(n));
  Table t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return from_table(t);
}

std::vector<GroupElement> FiniteGroup::elements() const {
  std::vector<GroupElement> out;
  out.reserve(table_.size());
  for (int a = 0; a < order(); ++a) out.emplace_back(a);
  return out;
}

}  // namespace hpc
