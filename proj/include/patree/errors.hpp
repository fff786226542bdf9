#pragma once

#include <stdexcept>

namespace patree {

struct io_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace patree
