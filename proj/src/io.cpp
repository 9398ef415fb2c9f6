#include "sympolar/io.hpp"

#include <cmath>
#include <fstream>

namespace sympolar {

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, Index rows, Index cols,
                        const std::string& what) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw ParseError(what + " must be an array of " + std::to_string(rows) +
                     " rows");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError(what + " row " + std::to_string(i) + " must carry " +
                       std::to_string(cols) + " numbers");
    for (Index c = 0; c < cols; ++c) {
      const auto& cell = row[static_cast<std::size_t>(c)];
      if (!cell.is_number())
        throw ParseError(what + " entries must be numbers");
      const double value = cell.get<double>();
      if (!std::isfinite(value))
        throw ParseError(what + " entries must be finite");
      m(i, c) = value;
    }
  }
  return m;
}

nlohmann::json to_json(const MatrixDocument& doc) {
  nlohmann::json j;
  j["n"] = doc.n;
  j["rows"] = matrix_to_json(doc.rows);
  if (doc.l) {
    nlohmann::json l = nlohmann::json::array();
    for (Index i = 0; i < doc.l->size(); ++i) l.push_back((*doc.l)(i));
    j["l"] = std::move(l);
  }
  if (doc.alpha) j["alpha"] = matrix_to_json(*doc.alpha);
  return j;
}

MatrixDocument matrix_document_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("document must carry an integer mode count 'n'");
  const Index n = j["n"].get<Index>();
  if (n < 1) throw ParseError("mode count must be at least 1");
  if (!j.contains("rows")) throw ParseError("document must carry 'rows'");

  MatrixDocument doc;
  doc.n = n;
  doc.rows = matrix_from_json(j["rows"], 2 * n, 2 * n, "rows");
  if (j.contains("l")) {
    const auto& l = j["l"];
    if (!l.is_array() || static_cast<Index>(l.size()) != 2 * n)
      throw ParseError("l must be an array of 2n numbers");
    Vector v(2 * n);
    for (Index i = 0; i < 2 * n; ++i) {
      const auto& cell = l[static_cast<std::size_t>(i)];
      if (!cell.is_number() || !std::isfinite(cell.get<double>()))
        throw ParseError("l entries must be finite numbers");
      v(i) = cell.get<double>();
    }
    doc.l = std::move(v);
  }
  if (j.contains("alpha"))
    doc.alpha = matrix_from_json(j["alpha"], 2 * n, 2 * n, "alpha");
  return doc;
}

MatrixDocument read_matrix_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("cannot parse " + path.string() + ": " + e.what());
  }
  return matrix_document_from_json(j);
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

void write_matrix_document(const std::filesystem::path& path, const Matrix& m) {
  MatrixDocument doc;
  doc.n = mode_count(m);
  doc.rows = m;
  write_json(path, to_json(doc));
}

void write_channel_document(const std::filesystem::path& path,
                            const GaussianChannelTriple& c) {
  MatrixDocument doc;
  doc.n = channel_mode_count(c);
  doc.rows = c.k;
  doc.l = c.l;
  doc.alpha = c.alpha;
  write_json(path, to_json(doc));
}

GaussianChannelTriple to_channel(const MatrixDocument& doc) {
  if (!doc.is_channel())
    throw ParseError("channel documents must carry K, l and alpha");
  return {doc.rows, *doc.l, *doc.alpha};
}

}  // namespace sympolar
