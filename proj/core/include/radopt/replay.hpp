#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "radopt/rng.hpp"

namespace radopt {

struct Transition {
  std::array<double, 4> state;
  int action;
  double reward;
  std::array<double, 4> next_state;
  bool done;  // terminal (not length truncation); gates bootstrapping
};

/// Fixed-capacity ring buffer with FIFO eviction and uniform sampling with
/// replacement.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(const Transition& t);
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }

  const Transition& sample(Rng& rng) const;

 private:
  std::size_t capacity_;
  std::size_t size_ = 0;
  std::size_t head_ = 0;
  std::vector<Transition> ring_;
};

}  // namespace radopt
