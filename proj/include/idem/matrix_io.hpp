#pragma once

#include <istream>
#include <optional>
#include <string>

#include "json.hpp"

#include "idem/matrix.hpp"

namespace idem {

/// Reads matrices in the text format:
///
///     <ring> <rows> <cols>
///     e00 e01 ...
///     ...
///
/// ring is one of Z, Q, Fp:<p>, Zx, Fpx:<p>, Qx. Entries are whitespace separated,
/// so an entry may not itself contain spaces. Blank lines and lines starting
/// with '#' are skipped. Several matrices may follow each other in one stream.
class MatrixReader {
public:
    explicit MatrixReader(std::istream& in) : in_(in) {}

    /// Next matrix, or nullopt at end of input. Throws ParseError with line/column.
    std::optional<Matrix> next();

private:
    bool next_content_line(std::string& line);

    std::istream& in_;
    std::size_t line_no_ = 0;
};

Matrix parse_matrix_text(const std::string& text);
std::string format_matrix_text(const Matrix& m);

/// {"ring": tag, "rows": r, "cols": c, "entries": [[...], ...]} with canonical scalar strings.
nlohmann::json matrix_to_json(const Matrix& m);
/// Accepts nested rows or a flat row-major list; scalars as strings or JSON integers.
Matrix matrix_from_json(const nlohmann::json& j);

} // namespace idem
