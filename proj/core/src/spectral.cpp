#include "spectral_reach/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spectral_reach/eigensolver.hpp"
#include "spectral_reach/error.hpp"
#include "spectral_reach/graph.hpp"

namespace spectral_reach {
namespace {

void fix_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    auto col = vectors.col(j);
    const double peak = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col[i]) >= peak - 1e-10) {
        if (col[i] < 0) col = -col;
        break;
      }
    }
  }
}

void check_dimension(const SpectralBasis& basis, int d) {
  if (d < 2 || static_cast<std::size_t>(d) > basis.size()) {
    throw Error(ErrorCode::DimensionOutOfRange,
                "d = " + std::to_string(d) + " outside [2, " + std::to_string(basis.size()) + "]");
  }
}

void check_connected(const SpectralBasis& basis, const char* what) {
  if (basis.size() < 2 || basis.eigenvalues[1] <= kConnectivityTolerance) {
    throw Error(ErrorCode::GraphDisconnected, std::string(what) + ": lambda_2 is zero");
  }
}

std::string format_double(double value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

}  // namespace

SpectralBasis eig_sym(const Eigen::MatrixXd& laplacian) {
  auto result = symmetric_eigen(laplacian);
  fix_signs(result.eigenvectors);
  SpectralBasis basis;
  basis.eigenvalues = std::move(result.eigenvalues);
  basis.eigenvectors = std::move(result.eigenvectors);
  return basis;
}

SpectralBasis spectral_basis(const StateGraph& g) { return eig_sym(g.laplacian()); }

std::string to_string(EmbeddingKind kind) {
  switch (kind) {
    case EmbeddingKind::LapRep: return "laprep";
    case EmbeddingKind::RaLapRep: return "ra_laprep";
    case EmbeddingKind::Learned: return "learned";
  }
  return "unknown";
}

Embedding laprep(const SpectralBasis& basis, int d) {
  check_dimension(basis, d);
  Embedding e;
  e.kind = EmbeddingKind::LapRep;
  e.d = d;
  e.vectors = basis.eigenvectors.middleCols(1, d - 1);
  e.eigenvalues = basis.eigenvalues.segment(1, d - 1);
  e.source = "eigendecomposition";
  return e;
}

Embedding ra_laprep(const SpectralBasis& basis, int d) {
  check_dimension(basis, d);
  check_connected(basis, "ra_laprep");
  Embedding e = laprep(basis, d);
  e.kind = EmbeddingKind::RaLapRep;
  for (Eigen::Index j = 0; j < e.vectors.cols(); ++j) e.vectors.col(j) /= std::sqrt(e.eigenvalues[j]);
  return e;
}

double embed_dist(const Embedding& e, std::size_t s, std::size_t t) {
  if (s >= e.states() || t >= e.states()) throw Error(ErrorCode::InvalidState, "state index out of range");
  return (e.vectors.row(static_cast<Eigen::Index>(s)) - e.vectors.row(static_cast<Eigen::Index>(t))).norm();
}

Eigen::VectorXd distances_to(const Embedding& e, std::size_t goal) {
  if (goal >= e.states()) throw Error(ErrorCode::InvalidState, "goal index out of range");
  const Eigen::RowVectorXd g = e.vectors.row(static_cast<Eigen::Index>(goal));
  return (e.vectors.rowwise() - g).rowwise().norm();
}

double truncated_commute(const SpectralBasis& basis, double volume, int d, std::size_t s, std::size_t t) {
  check_dimension(basis, d);
  check_connected(basis, "truncated_commute");
  double sum = 0.0;
  for (Eigen::Index i = 1; i < d; ++i) {
    const double diff = basis.eigenvectors(static_cast<Eigen::Index>(s), i) -
                        basis.eigenvectors(static_cast<Eigen::Index>(t), i);
    sum += diff * diff / basis.eigenvalues[i];
  }
  return volume * sum;
}

double truncation_tail(const SpectralBasis& basis, double volume, int d, std::size_t s, std::size_t t) {
  check_dimension(basis, d);
  check_connected(basis, "truncation_tail");
  double sum = 0.0;
  for (auto i = static_cast<Eigen::Index>(d); i < basis.eigenvalues.size(); ++i) {
    const double diff = basis.eigenvectors(static_cast<Eigen::Index>(s), i) -
                        basis.eigenvectors(static_cast<Eigen::Index>(t), i);
    sum += diff * diff / basis.eigenvalues[i];
  }
  return volume * sum;
}

double truncation_bound(const SpectralBasis& basis, double volume, int d) {
  check_dimension(basis, d);
  check_connected(basis, "truncation_bound");
  double sum = 0.0;
  for (auto i = static_cast<Eigen::Index>(d); i < basis.eigenvalues.size(); ++i) sum += 1.0 / basis.eigenvalues[i];
  return 4.0 * volume * sum;
}

std::string embedding_to_csv(const Embedding& e) {
  std::string out = "state_index,x,y";
  for (int i = 2; i <= e.d; ++i) out += ",e" + std::to_string(i);
  out += '\n';
  for (Eigen::Index s = 0; s < e.vectors.rows(); ++s) {
    out += std::to_string(s);
    if (static_cast<std::size_t>(s) < e.coords.size()) {
      out += "," + std::to_string(e.coords[static_cast<std::size_t>(s)].x) + "," +
             std::to_string(e.coords[static_cast<std::size_t>(s)].y);
    } else {
      out += ",,";
    }
    for (Eigen::Index j = 0; j < e.vectors.cols(); ++j) out += "," + format_double(e.vectors(s, j));
    out += '\n';
  }
  return out;
}

Embedding embedding_from_csv(const std::string& text, EmbeddingKind kind) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("state_index,x,y", 0) != 0) {
    throw Error(ErrorCode::InvalidInput, "embedding CSV must start with header state_index,x,y");
  }
  const auto columns = static_cast<int>(std::count(line.begin(), line.end(), ',')) - 2;
  if (columns < 1) throw Error(ErrorCode::InvalidInput, "embedding CSV has no coordinate columns");

  std::vector<std::vector<double>> rows;
  std::vector<Cell> coords;
  bool have_coords = true;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    if (fields.size() != static_cast<std::size_t>(columns + 3)) {
      throw Error(ErrorCode::InvalidInput, "embedding CSV line " + std::to_string(line_no) + " has " +
                                               std::to_string(fields.size()) + " fields");
    }
    try {
      if (std::stoul(fields[0]) != rows.size()) {
        throw Error(ErrorCode::InvalidInput, "embedding CSV state indices must be contiguous from 0");
      }
      if (fields[1].empty() || fields[2].empty()) {
        have_coords = false;
      } else {
        coords.push_back({std::stoi(fields[1]), std::stoi(fields[2])});
      }
      std::vector<double> row;
      for (int j = 0; j < columns; ++j) row.push_back(std::stod(fields[static_cast<std::size_t>(j + 3)]));
      rows.push_back(std::move(row));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::InvalidInput, "embedding CSV line " + std::to_string(line_no) + " is not numeric");
    }
  }
  if (rows.empty()) throw Error(ErrorCode::InvalidInput, "embedding CSV has no rows");

  Embedding e;
  e.kind = kind;
  e.d = columns + 1;
  e.vectors.resize(static_cast<Eigen::Index>(rows.size()), columns);
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (int j = 0; j < columns; ++j) e.vectors(static_cast<Eigen::Index>(s), j) = rows[s][static_cast<std::size_t>(j)];
  }
  if (have_coords) e.coords = std::move(coords);
  e.source = "csv";
  return e;
}

std::string basis_to_json(const SpectralBasis& basis) {
  nlohmann::json doc;
  doc["eigenvalues"] = std::vector<double>(basis.eigenvalues.begin(), basis.eigenvalues.end());
  doc["sign_convention"] = basis.sign_convention;
  return doc.dump();
}

}  // namespace spectral_reach
