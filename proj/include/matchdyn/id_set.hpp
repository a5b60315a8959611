// Copyright 2026 The matchdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MATCHDYN_ID_SET_HPP_
#define MATCHDYN_ID_SET_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace matchdyn {

// A set of dense integer ids kept as a strictly increasing vector. The
// vector itself is the canonical state encoding used for hashing and cycle
// detection. Tag keeps coalition structures and matchings apart.
template <typename Tag>
class SortedIdSet {
 public:
  SortedIdSet() = default;
  SortedIdSet(std::initializer_list<int> ids) : ids_(ids) { normalize(); }
  explicit SortedIdSet(std::vector<int> ids) : ids_(std::move(ids)) {
    normalize();
  }

  static SortedIdSet from_sorted(std::vector<int> ids) {
    SortedIdSet s;
    s.ids_ = std::move(ids);
    return s;
  }

  bool contains(int id) const {
    return std::binary_search(ids_.begin(), ids_.end(), id);
  }
  void insert(int id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) ids_.insert(it, id);
  }
  void erase(int id) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it != ids_.end() && *it == id) ids_.erase(it);
  }

  std::span<const int> ids() const { return ids_; }
  const std::vector<int>& key() const { return ids_; }
  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }

  friend bool operator==(const SortedIdSet&, const SortedIdSet&) = default;
  friend auto operator<=>(const SortedIdSet&, const SortedIdSet&) = default;

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }

  std::vector<int> ids_;
};

struct IdVectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int x : v) {
      h ^= static_cast<std::size_t>(static_cast<unsigned>(x)) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
    }
    return h;
  }
  template <typename Tag>
  std::size_t operator()(const SortedIdSet<Tag>& s) const noexcept {
    return (*this)(s.key());
  }
};

}  // namespace matchdyn

#endif  // MATCHDYN_ID_SET_HPP_
