#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "sympolar/channels.hpp"
#include "sympolar/types.hpp"

namespace sympolar {

/// Document that failed to parse or validate.
struct ParseError : Error {
  using Error::Error;
};

/// On-disk matrix/channel document.  Plain matrices carry {n, rows}; channel
/// documents additionally carry l and alpha.
struct MatrixDocument {
  Index n = 0;
  Matrix rows;
  std::optional<Vector> l;
  std::optional<Matrix> alpha;

  [[nodiscard]] bool is_channel() const { return l && alpha; }
};

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, Index rows, Index cols,
                        const std::string& what);

nlohmann::json to_json(const MatrixDocument& doc);
MatrixDocument matrix_document_from_json(const nlohmann::json& j);

MatrixDocument read_matrix_document(const std::filesystem::path& path);
void write_matrix_document(const std::filesystem::path& path, const Matrix& m);
void write_channel_document(const std::filesystem::path& path,
                            const GaussianChannelTriple& c);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Requires l and alpha to be present.
GaussianChannelTriple to_channel(const MatrixDocument& doc);

}  // namespace sympolar
