#include "radopt/replay.hpp"

#include <stdexcept>

namespace radopt {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay capacity must be positive");
  ring_.reserve(capacity);
}

void ReplayBuffer::push(const Transition& t) {
  if (size_ < capacity_) {
    ring_.push_back(t);
    ++size_;
  } else {
    ring_[head_] = t;
    head_ = (head_ + 1) % capacity_;
  }
}

const Transition& ReplayBuffer::sample(Rng& rng) const {
  if (size_ == 0) throw std::logic_error("sampling from empty replay buffer");
  return ring_[rng.uniform_int(size_)];
}

}  // namespace radopt
