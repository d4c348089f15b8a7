#include "maxtsp/instance.hpp"

#include <fstream>
#include <istream>
#include <ostream>

namespace maxtsp {

Instance::Instance(std::vector<std::vector<Weight>> matrix) : matrix_(std::move(matrix)) {
  const std::size_t n = matrix_.size();
  if (n < 2) throw InstanceError("instance needs at least 2 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix_[i].size() != n) throw InstanceError("weight matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix_[i][i] != 0) throw InstanceError("diagonal entry " + std::to_string(i) + " is not zero");
    for (std::size_t j = 0; j < n; ++j) {
      if (matrix_[i][j] < 0) throw InstanceError("negative weight at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      if (matrix_[i][j] != matrix_[j][i]) {
        throw InstanceError("asymmetric weight at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

Instance parse_instance(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw InstanceError("empty instance");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
  } catch (const std::exception&) {
    throw InstanceError("bad vertex count: " + token);
  }
  if (n < 2) throw InstanceError("instance needs at least 2 vertices");
  std::vector<std::vector<Weight>> matrix(n, std::vector<Weight>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> token)) throw InstanceError("truncated weight matrix");
      try {
        matrix[i][j] = parse_decimal(token);
      } catch (const std::invalid_argument&) {
        throw InstanceError("bad weight: " + token);
      }
    }
  }
  if (in >> token) throw InstanceError("trailing data after weight matrix: " + token);
  return Instance(std::move(matrix));
}

Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open " + path);
  return parse_instance(in);
}

void write_instance(std::ostream& out, const Instance& inst) {
  const int n = inst.size();
  out << n << '\n';
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << to_decimal_string(inst.weight(i, j));
    }
    out << '\n';
  }
}

}  // namespace maxtsp
