#pragma once

// Data-parallel loop skeletons. Every kernel in the library is written
// against these two helpers and is run with Exec::serial in the reference
// tests; the OpenMP path must give identical results.

#include <cstddef>
#include <cstdint>
#include <exception>
#include <optional>
#include <type_traits>
#include <utility>

namespace hypcox {

enum class Exec { serial, parallel };

// Below this many work items the OpenMP region costs more than it saves.
inline constexpr std::size_t kParallelMin = 32;

// Smallest i in [0, n) with f(i) engaged, together with *f(i).
template <class F>
auto find_first(std::size_t n, F&& f, Exec exec = Exec::parallel)
    -> std::optional<std::pair<std::size_t, typename std::invoke_result_t<F&, std::size_t>::value_type>> {
  using T = typename std::invoke_result_t<F&, std::size_t>::value_type;
  if (exec == Exec::serial || n < kParallelMin) {
    for (std::size_t i = 0; i < n; ++i) {
      if (auto r = f(i)) return std::pair<std::size_t, T>{i, std::move(*r)};
    }
    return std::nullopt;
  }
  std::size_t best = n;
  std::optional<T> best_value;
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    std::size_t current;
#pragma omp atomic read
    current = best;
    if (static_cast<std::size_t>(i) >= current) continue;
    try {
      if (auto r = f(static_cast<std::size_t>(i))) {
#pragma omp critical(hypcox_find_first)
        {
          if (static_cast<std::size_t>(i) < best) {
            best = static_cast<std::size_t>(i);
            best_value = std::move(r);
          }
        }
      }
    } catch (...) {
#pragma omp critical(hypcox_find_first_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  if (best == n) return std::nullopt;
  return std::pair<std::size_t, T>{best, std::move(*best_value)};
}

// f(i) for every i; f must only write to slots owned by i.
template <class F>
void for_each_index(std::size_t n, F&& f, Exec exec = Exec::parallel) {
  if (exec == Exec::serial || n < kParallelMin) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    try {
      f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(hypcox_for_each_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace hypcox
