#include "sbench/core/scalar_field.hpp"

#include <string>

#include "sbench/core/errors.hpp"

namespace sbench {

ScalarField::ScalarField(int width, int height, double fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw DimensionError("field dimensions must be positive, got " + std::to_string(width) + "x" +
                         std::to_string(height));
  }
  values_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 normalize(fill));
}

}  // namespace sbench
