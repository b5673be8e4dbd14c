#include "sparsectrl/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sparsectrl {

namespace {

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

} // namespace

void write_edge_list(const BinaryAdjacency& adjacency, std::ostream& out) {
    out << adjacency.n << ' ' << (adjacency.directed ? 1 : 0) << '\n';
    for (int i = 0; i < adjacency.n; ++i) {
        const int j_begin = adjacency.directed ? 0 : i + 1;
        for (int j = j_begin; j < adjacency.n; ++j) {
            if (i != j && adjacency.entries(i, j) != 0) out << i << ' ' << j << '\n';
        }
    }
}

void write_edge_list_file(const BinaryAdjacency& adjacency, const std::string& path) {
    std::ofstream out = open_output(path);
    write_edge_list(adjacency, out);
}

BinaryAdjacency read_edge_list(std::istream& in) {
    int n = 0;
    int directed_flag = 0;
    if (!(in >> n >> directed_flag) || n < 1 || (directed_flag != 0 && directed_flag != 1))
        throw std::runtime_error("edge list: malformed header, expected \"n directed\"");
    BinaryAdjacency adjacency{n, directed_flag == 1, Eigen::MatrixXi::Zero(n, n)};
    int i = 0;
    int j = 0;
    while (in >> i >> j) {
        if (i < 0 || j < 0 || i >= n || j >= n || i == j)
            throw std::runtime_error("edge list: invalid edge " + std::to_string(i) + " " +
                                     std::to_string(j));
        adjacency.entries(i, j) = 1;
        if (!adjacency.directed) adjacency.entries(j, i) = 1;
    }
    if (!in.eof() && in.fail()) throw std::runtime_error("edge list: malformed edge line");
    return adjacency;
}

BinaryAdjacency read_edge_list_file(const std::string& path) {
    std::ifstream in = open_input(path);
    return read_edge_list(in);
}

void write_dense_csv(const Eigen::MatrixXd& matrix, std::ostream& out) {
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(matrix(i, j));
        }
        out << '\n';
    }
}

Eigen::VectorXd read_vector_file(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<double> values;
    std::string token;
    while (in) {
        int c = in.get();
        if (c == EOF || c == ',' || c == '\n' || c == '\r' || c == ' ' || c == '\t') {
            if (!token.empty()) {
                std::size_t used = 0;
                const double value = std::stod(token, &used);
                if (used != token.size())
                    throw std::runtime_error("vector file: bad value '" + token + "'");
                values.push_back(value);
                token.clear();
            }
            if (c == EOF) break;
        } else {
            token.push_back(static_cast<char>(c));
        }
    }
    if (values.empty()) throw std::runtime_error("vector file: no values in " + path);
    Eigen::VectorXd out(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) out(static_cast<Eigen::Index>(i)) = values[i];
    return out;
}

std::vector<Support> read_explicit_sets_file(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<Support> sets;
    std::string line;
    while (std::getline(in, line)) {
        std::string cleaned;
        for (char c : line) {
            if (c == '{' || c == '}' || c == ',') {
                cleaned.push_back(' ');
            } else {
                cleaned.push_back(c);
            }
        }
        std::istringstream fields(cleaned);
        Support set;
        int idx = 0;
        while (fields >> idx) set.push_back(idx);
        if (fields.fail() && !fields.eof())
            throw std::runtime_error("explicit sets: malformed line '" + line + "'");
        if (set.empty()) continue;
        std::sort(set.begin(), set.end());
        sets.push_back(std::move(set));
    }
    if (sets.empty()) throw std::runtime_error("explicit sets: no sets in " + path);
    return sets;
}

std::string sweep_csv_header() {
    return "model,n,p_or_alpha,family,s,m,trials,seed,controllable_count,p_hat,ci_low,ci_high";
}

std::string sweep_row_csv(const SweepRow& row) {
    std::ostringstream out;
    char buffer[64];
    out << graph_model_name(row.model) << ',' << row.n << ',';
    std::snprintf(buffer, sizeof(buffer), "%g", row.p_or_alpha);
    out << buffer << ',' << row.family << ',' << row.s << ',' << row.m << ',' << row.trials << ','
        << row.seed << ',' << row.controllable_count << ',';
    std::snprintf(buffer, sizeof(buffer), "%.9g,%.9g,%.9g", row.p_hat, row.ci_low, row.ci_high);
    out << buffer;
    return out.str();
}

} // namespace sparsectrl
