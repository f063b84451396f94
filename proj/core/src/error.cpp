#include "sae/error.hpp"

#include <utility>

namespace sae {

ParseError::ParseError(std::size_t row, std::string column, const std::string& reason)
    : DataError(row == 0 ? reason
                         : "row " + std::to_string(row) +
                               (column.empty() ? "" : ", column '" + column + "'") + ": " +
                               reason),
      row_(row),
      column_(std::move(column)) {}

}  // namespace sae
