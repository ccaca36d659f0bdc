// Copyright 2026 The zxbp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace zxbp {

class ContractionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense tensor over a list of variables; data is row-major with the first
// variable most significant.
template <class T>
struct Factor {
  std::vector<int> vars;
  std::vector<T> data;
};

// A network of factors over shared (hyperedge) variables.  A variable shared
// by any number of factors is summed once, so copy tensors need no explicit
// node.
template <class T>
class TensorNetwork {
 public:
  int add_var(int dim) {
    if (dim <= 0) throw ContractionError("variable dimension must be positive");
    dims_.push_back(dim);
    return static_cast<int>(dims_.size()) - 1;
  }
  int dim(int var) const { return dims_.at(var); }
  int num_vars() const { return static_cast<int>(dims_.size()); }
  const std::vector<Factor<T>>& factors() const { return factors_; }

  void add_factor(std::vector<int> vars, std::vector<T> data) {
    std::size_t size = 1;
    for (int v : vars) size *= static_cast<std::size_t>(dims_.at(v));
    if (size != data.size()) throw ContractionError("factor data size mismatch");
    factors_.push_back(canonical({std::move(vars), std::move(data)}));
  }

  void set_max_entries(std::size_t m) { max_entries_ = m; }

  // Sums out every variable not in `open`; the result is ordered by `open`.
  // Variables are eliminated greedily, smallest resulting tensor first, ties
  // broken by lowest variable id.
  Factor<T> contract(const std::vector<int>& open = {}) const {
    std::set<int> open_set(open.begin(), open.end());
    if (open_set.size() != open.size()) throw ContractionError("repeated open variable");
    std::vector<Factor<T>> live = factors_;
    std::vector<bool> alive(live.size(), true);
    std::vector<std::set<int>> where(dims_.size());
    for (std::size_t f = 0; f < live.size(); ++f) {
      for (int v : live[f].vars) where[v].insert(static_cast<int>(f));
    }
    T scale = T(1);
    std::set<int> pending;
    for (int v = 0; v < num_vars(); ++v) {
      if (open_set.count(v)) continue;
      if (where[v].empty()) {
        scale *= T(dims_[v]);
      } else {
        pending.insert(v);
      }
    }
    while (!pending.empty()) {
      int best = -1;
      std::size_t best_cost = std::numeric_limits<std::size_t>::max();
      for (int v : pending) {
        std::set<int> vars;
        for (int f : where[v]) vars.insert(live[f].vars.begin(), live[f].vars.end());
        vars.erase(v);
        std::size_t cost = 1;
        for (int u : vars) {
          cost *= static_cast<std::size_t>(dims_[u]);
          if (cost > max_entries_) break;
        }
        if (cost < best_cost) {
          best_cost = cost;
          best = v;
        }
      }
      if (best_cost > max_entries_) throw ContractionError("intermediate tensor exceeds memory budget");
      std::vector<int> fs(where[best].begin(), where[best].end());
      std::vector<const Factor<T>*> parts;
      for (int f : fs) parts.push_back(&live[f]);
      Factor<T> merged = multiply(parts, best);
      for (int f : fs) {
        alive[f] = false;
        for (int v : live[f].vars) where[v].erase(f);
        live[f] = Factor<T>{};
      }
      pending.erase(best);
      if (merged.vars.empty()) {
        scale *= merged.data[0];
        continue;
      }
      int id = static_cast<int>(live.size());
      for (int v : merged.vars) where[v].insert(id);
      live.push_back(std::move(merged));
      alive.push_back(true);
    }
    std::vector<const Factor<T>*> rest;
    for (std::size_t f = 0; f < live.size(); ++f) {
      if (alive[f]) rest.push_back(&live[f]);
    }
    Factor<T> out = product_over(rest, open);
    for (auto& x : out.data) x *= scale;
    return out;
  }

  T contract_scalar() const { return contract({}).data.at(0); }

 private:
  // Sorts variables and merges repeated ones (taking the diagonal).
  Factor<T> canonical(Factor<T> f) const {
    std::vector<int> vars = f.vars;
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    if (vars == f.vars) return f;
    std::vector<const Factor<T>*> parts{&f};
    return product_over(parts, vars);
  }

  std::vector<std::size_t> strides_for(const Factor<T>& f, const std::vector<int>& order) const {
    std::vector<std::size_t> own(f.vars.size());
    std::size_t s = 1;
    for (std::size_t k = f.vars.size(); k-- > 0;) {
      own[k] = s;
      s *= static_cast<std::size_t>(dims_[f.vars[k]]);
    }
    std::vector<std::size_t> out(order.size(), 0);
    for (std::size_t k = 0; k < f.vars.size(); ++k) {
      for (std::size_t j = 0; j < order.size(); ++j) {
        if (order[j] == f.vars[k]) out[j] += own[k];
      }
    }
    return out;
  }

  // Product of factors laid out over `order` (which must cover their vars).
  Factor<T> product_over(const std::vector<const Factor<T>*>& parts,
                         const std::vector<int>& order) const {
    std::size_t total = 1;
    for (int v : order) {
      total *= static_cast<std::size_t>(dims_[v]);
      if (total > max_entries_) throw ContractionError("intermediate tensor exceeds memory budget");
    }
    std::vector<std::vector<std::size_t>> strides;
    for (const auto* p : parts) strides.push_back(strides_for(*p, order));
    Factor<T> out;
    out.vars = order;
    out.data.assign(total, T(0));
    std::vector<int> digit(order.size(), 0);
    std::vector<std::size_t> idx(parts.size(), 0);
    for (std::size_t lin = 0; lin < total; ++lin) {
      T acc = T(1);
      for (std::size_t p = 0; p < parts.size(); ++p) acc *= parts[p]->data[idx[p]];
      out.data[lin] = acc;
      for (std::size_t k = order.size(); k-- > 0;) {
        if (++digit[k] < dims_[order[k]]) {
          for (std::size_t p = 0; p < parts.size(); ++p) idx[p] += strides[p][k];
          break;
        }
        for (std::size_t p = 0; p < parts.size(); ++p) {
          idx[p] -= strides[p][k] * static_cast<std::size_t>(dims_[order[k]] - 1);
        }
        digit[k] = 0;
      }
    }
    return out;
  }

  // Product of factors with variable v summed out; result vars sorted.
  Factor<T> multiply(const std::vector<const Factor<T>*>& parts, int v) const {
    std::set<int> vs;
    for (const auto* p : parts) vs.insert(p->vars.begin(), p->vars.end());
    vs.erase(v);
    std::vector<int> order(vs.begin(), vs.end());
    order.push_back(v);  // innermost, so the sum runs over consecutive entries
    std::size_t outer = 1;
    for (std::size_t k = 0; k + 1 < order.size(); ++k) {
      outer *= static_cast<std::size_t>(dims_[order[k]]);
      if (outer > max_entries_) throw ContractionError("intermediate tensor exceeds memory budget");
    }
    std::size_t inner = static_cast<std::size_t>(dims_[v]);
    std::vector<std::vector<std::size_t>> strides;
    for (const auto* p : parts) strides.push_back(strides_for(*p, order));
    Factor<T> out;
    out.vars.assign(order.begin(), order.end() - 1);
    out.data.assign(outer, T(0));
    std::vector<int> digit(order.size(), 0);
    std::vector<std::size_t> idx(parts.size(), 0);
    for (std::size_t o = 0; o < outer; ++o) {
      T sum = T(0);
      for (std::size_t i = 0; i < inner; ++i) {
        T acc = T(1);
        for (std::size_t p = 0; p < parts.size(); ++p) {
          acc *= parts[p]->data[idx[p] + i * strides[p].back()];
        }
        sum += acc;
      }
      out.data[o] = sum;
      for (std::size_t k = order.size() - 1; k-- > 0;) {
        if (++digit[k] < dims_[order[k]]) {
          for (std::size_t p = 0; p < parts.size(); ++p) idx[p] += strides[p][k];
          break;
        }
        for (std::size_t p = 0; p < parts.size(); ++p) {
          idx[p] -= strides[p][k] * static_cast<std::size_t>(dims_[order[k]] - 1);
        }
        digit[k] = 0;
      }
    }
    return out;
  }

  std::vector<int> dims_;
  std::vector<Factor<T>> factors_;
  std::size_t max_entries_ = std::size_t{1} << 26;
};

}  // namespace zxbp
