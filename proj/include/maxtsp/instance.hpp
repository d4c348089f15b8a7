#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "maxtsp/weight.hpp"

namespace maxtsp {

using VertexId = int;

class InstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Complete undirected graph given by a symmetric nonnegative weight matrix.
class Instance {
 public:
  /// Throws InstanceError unless the matrix is square, n >= 2, symmetric,
  /// nonnegative, and zero on the diagonal.
  explicit Instance(std::vector<std::vector<Weight>> matrix);

  int size() const { return static_cast<int>(matrix_.size()); }
  const Weight& weight(VertexId u, VertexId v) const { return matrix_[u][v]; }
  const std::vector<std::vector<Weight>>& matrix() const { return matrix_; }

 private:
  std::vector<std::vector<Weight>> matrix_;
};

/// Text format: first token n, then n*n whitespace-separated decimals.
Instance parse_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& inst);

}  // namespace maxtsp
