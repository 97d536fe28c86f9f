#include "famcat/todd_coxeter.hpp"

#include <deque>
#include <string>

namespace famcat {

namespace {

int inv_letter(int l) { return l ^ 1; }

struct Enumerator {
  int nletters;
  int max_cosets;
  std::vector<std::vector<int>> tab;  // coset x letter -> coset or -1
  std::vector<int> rep;               // union-find over cosets
  std::deque<std::pair<int, int>> pending;
  int live = 1;

  explicit Enumerator(int generators, int cap)
      : nletters(2 * generators), max_cosets(cap) {
    tab.push_back(std::vector<int>(nletters, -1));
    rep.push_back(0);
  }

  int find(int c) {
    while (rep[c] != c) {
      rep[c] = rep[rep[c]];
      c = rep[c];
    }
    return c;
  }

  int get(int c, int l) {
    const int d = tab[c][l];
    return d < 0 ? -1 : find(d);
  }

  void set(int c, int l, int d) {
    tab[c][l] = d;
    tab[d][inv_letter(l)] = c;
  }

  bool define(int c, int l) {
    if (live >= max_cosets) return false;
    const int n = static_cast<int>(tab.size());
    tab.push_back(std::vector<int>(nletters, -1));
    rep.push_back(n);
    ++live;
    set(c, l, n);
    return true;
  }

  void coincide(int a, int b) {
    pending.emplace_back(a, b);
    while (!pending.empty()) {
      auto [x, y] = pending.front();
      pending.pop_front();
      x = find(x);
      y = find(y);
      if (x == y) continue;
      if (x > y) std::swap(x, y);
      rep[y] = x;
      --live;
      for (int l = 0; l < nletters; ++l) {
        const int d = tab[y][l];
        if (d < 0) continue;
        const int dx = tab[x][l];
        if (dx < 0)
          tab[x][l] = d;
        else
          pending.emplace_back(dx, d);
      }
    }
  }

  // Scan relator w at coset c, defining cosets to close the gap. Returns
  // false only when the coset cap is hit.
  bool scan_and_fill(int c, const std::vector<int>& w, bool* progressed) {
    while (true) {
      c = find(c);
      int f = c;
      size_t i = 0;
      while (i < w.size()) {
        const int next = get(f, w[i]);
        if (next < 0) break;
        f = next;
        ++i;
      }
      if (i == w.size()) {
        if (f != c) {
          coincide(f, c);
          *progressed = true;
        }
        return true;
      }
      int b = c;
      size_t j = w.size();
      while (j > i) {
        const int prev = get(b, inv_letter(w[j - 1]));
        if (prev < 0) break;
        b = prev;
        --j;
      }
      if (j == i + 1) {
        set(find(f), w[i], find(b));
        *progressed = true;
        return true;
      }
      if (j == i) {
        coincide(f, b);
        *progressed = true;
        continue;  // rescan after the merge
      }
      if (!define(find(f), w[i])) return false;
      *progressed = true;
    }
  }
};

}  // namespace

std::optional<FiniteGroup> todd_coxeter(const Presentation& p, int max_cosets) {
  Enumerator e(p.generators, max_cosets);

  // Iterate scans to a fixpoint: all relators close at all live cosets and
  // every row is complete. At that point the table is the regular action.
  bool progressed = true;
  while (progressed) {
    progressed = false;
    for (int c = 0; c < static_cast<int>(e.tab.size()); ++c) {
      if (e.find(c) != c) continue;
      for (const auto& w : p.relators)
        if (!e.scan_and_fill(c, w, &progressed)) return std::nullopt;
      if (e.find(c) != c) continue;
      for (int l = 0; l < e.nletters; ++l) {
        if (e.get(c, l) < 0) {
          if (!e.define(c, l)) return std::nullopt;
          progressed = true;
        }
      }
    }
  }

  // Compact live cosets.
  std::vector<int> index(e.tab.size(), -1);
  std::vector<int> cosets;
  for (int c = 0; c < static_cast<int>(e.tab.size()); ++c)
    if (e.find(c) == c) {
      index[c] = static_cast<int>(cosets.size());
      cosets.push_back(c);
    }
  const int n = static_cast<int>(cosets.size());

  // Defining word per coset (path from coset 0 in the table graph).
  std::vector<std::vector<int>> word(n);
  std::vector<bool> seen(n, false);
  std::deque<int> queue;
  seen[index[e.find(0)]] = true;
  queue.push_back(e.find(0));
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    for (int l = 0; l < e.nletters; ++l) {
      const int d = e.get(c, l);
      if (d < 0 || seen[index[d]]) continue;
      seen[index[d]] = true;
      word[index[d]] = word[index[c]];
      word[index[d]].push_back(l);
      queue.push_back(d);
    }
  }

  FiniteGroup g;
  g.elems.resize(n);
  for (int i = 0; i < n; ++i) g.elems[i] = "c" + std::to_string(i);
  g.identity = index[e.find(0)];
  g.table.assign(static_cast<size_t>(n) * n, -1);
  g.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int c = cosets[a];
      for (int l : word[b]) c = e.get(c, l);
      g.table[a * n + b] = index[c];
      if (index[c] == g.identity && g.inverse[a] < 0) g.inverse[a] = b;
    }
  }
  return g;
}

}  // namespace famcat
