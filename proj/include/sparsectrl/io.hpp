#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsectrl/graphs.hpp"
#include "sparsectrl/montecarlo.hpp"
#include "sparsectrl/sparsity.hpp"

namespace sparsectrl {

/// Version stamp written as the first comment line of every CSV emitted here.
inline constexpr const char* kCsvVersionComment = "# sparse-ctrl-lab v1";

/// Edge-list text format: header "n directed" (directed as 0/1), then one
/// 0-indexed "i j" pair per line. Undirected graphs store each edge once with
/// i < j.
void write_edge_list(const BinaryAdjacency& adjacency, std::ostream& out);
void write_edge_list_file(const BinaryAdjacency& adjacency, const std::string& path);
BinaryAdjacency read_edge_list(std::istream& in);
BinaryAdjacency read_edge_list_file(const std::string& path);

/// Dense comma-separated matrix, one row per line, full double precision.
void write_dense_csv(const Eigen::MatrixXd& matrix, std::ostream& out);

/// Vector from a text file: values separated by commas, whitespace or
/// newlines.
Eigen::VectorXd read_vector_file(const std::string& path);

/// Explicit support sets, one "{i,j,k}" line each, 0-based indices.
std::vector<Support> read_explicit_sets_file(const std::string& path);

std::string sweep_csv_header();
std::string sweep_row_csv(const SweepRow& row);

} // namespace sparsectrl
