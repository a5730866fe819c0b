#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

namespace twistkl::detail {

/// Fixed-size memo table whose slots are each filled at most once. Concurrent
/// readers of a slot either see the finished value or wait for the thread
/// filling it. A producer may recursively request other slots, as long as
/// the dependency graph is acyclic.
template <class T>
class OnceTable {
 public:
  OnceTable() = default;
  explicit OnceTable(std::size_t n)
      : flags_(std::make_unique<std::once_flag[]>(n)), slots_(n) {}

  std::size_t size() const { return slots_.size(); }

  template <class Make>
  const T& get(std::size_t i, Make&& make) const {
    std::call_once(flags_[i], [&] { slots_[i].emplace(make()); });
    return *slots_[i];
  }

 private:
  std::unique_ptr<std::once_flag[]> flags_;
  mutable std::vector<std::optional<T>> slots_;
};

}  // namespace twistkl::detail
