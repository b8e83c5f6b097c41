#pragma once

#include <cstdint>

#include "levylab/random.hpp"

namespace levylab::keyed {

/// Distinct purposes for counter-based draws tied to a path key, so that two
/// refinements of the same interval never reuse a variate.
enum class Purpose : std::uint64_t {
  argmax = 1,
  argmin,
  first_passage,
  last_passage,
  insert_left_max,
  insert_left_min,
  insert_right_max,
  insert_right_min,
};

}  // namespace levylab::keyed

namespace levylab {

inline double keyed_uniform(std::uint64_t key, std::uint64_t counter,
                            keyed::Purpose purpose) noexcept {
  return keyed_uniform(key, counter, static_cast<std::uint64_t>(purpose));
}

}  // namespace levylab
