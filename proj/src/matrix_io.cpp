#include "idem/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace idem {

namespace {

struct Token {
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(const std::string& line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        if (i == line.size())
            break;
        auto start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])))
            ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

std::size_t parse_dimension(const Token& t, std::size_t line)
{
    if (t.text.empty() || t.text.size() > 6 ||
        !std::all_of(t.text.begin(), t.text.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ParseError("expected a dimension, got '" + t.text + "'", line, t.column);
    return std::stoul(t.text);
}

} // namespace

bool MatrixReader::next_content_line(std::string& line)
{
    while (std::getline(in_, line)) {
        ++line_no_;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        return true;
    }
    return false;
}

std::optional<Matrix> MatrixReader::next()
{
    std::string line;
    if (!next_content_line(line))
        return std::nullopt;
    auto header = tokenize(line);
    if (header.size() != 3)
        throw ParseError("header must be '<ring> <rows> <cols>'", line_no_, header.empty() ? 1 : header[0].column);
    Ring ring;
    try {
        ring = parse_ring_tag(header[0].text);
    } catch (const ParseError& e) {
        throw ParseError(e.detail(), line_no_, header[0].column + e.column() - 1);
    } catch (const Error& e) {
        throw ParseError(e.what(), line_no_, header[0].column);
    }
    auto rows = parse_dimension(header[1], line_no_);
    auto cols = parse_dimension(header[2], line_no_);
    std::vector<RingValue> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!next_content_line(line))
            throw ParseError("expected " + std::to_string(rows) + " rows, input ended after " + std::to_string(i),
                             line_no_ + 1, 1);
        auto tokens = tokenize(line);
        if (tokens.size() != cols)
            throw ParseError("expected " + std::to_string(cols) + " entries, got " + std::to_string(tokens.size()),
                             line_no_, tokens.empty() ? 1 : tokens.back().column);
        for (const auto& t : tokens) {
            try {
                entries.push_back(parse_scalar(ring, t.text));
            } catch (const ParseError& e) {
                throw ParseError(e.detail() + " (entry '" + t.text + "')", line_no_,
                                 t.column + (e.column() ? e.column() - 1 : 0));
            } catch (const Error& e) {
                throw ParseError(std::string(e.what()) + " (entry '" + t.text + "')", line_no_, t.column);
            }
        }
    }
    return Matrix(ring, rows, cols, std::move(entries));
}

Matrix parse_matrix_text(const std::string& text)
{
    std::istringstream in(text);
    MatrixReader reader(in);
    auto m = reader.next();
    if (!m)
        throw ParseError("no matrix in input", 1, 1);
    return *m;
}

std::string format_matrix_text(const Matrix& m)
{
    std::string out = m.ring()->name() + " " + std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                out += ' ';
            out += m(i, j).str();
        }
        out += '\n';
    }
    return out;
}

nlohmann::json matrix_to_json(const Matrix& m)
{
    auto rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j).str());
        rows.push_back(std::move(row));
    }
    return {{"ring", m.ring()->name()}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const nlohmann::json& j)
{
    auto fail = [](const std::string& msg) -> Matrix { throw ParseError("matrix JSON: " + msg, 0, 0); };
    if (!j.is_object() || !j.contains("ring") || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        return fail("expected an object with ring, rows, cols, entries");
    if (!j["ring"].is_string() || !j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        return fail("ring must be a string, rows/cols non-negative integers");
    Ring ring;
    try {
        ring = parse_ring_tag(j["ring"].get<std::string>());
    } catch (const ParseError& e) {
        return fail(e.detail());
    } catch (const Error& e) {
        return fail(e.what());
    }
    auto rows = j["rows"].get<std::size_t>();
    auto cols = j["cols"].get<std::size_t>();
    std::vector<const nlohmann::json*> flat;
    const auto& entries = j["entries"];
    if (!entries.is_array())
        return fail("entries must be an array");
    for (const auto& e : entries) {
        if (e.is_array())
            for (const auto& x : e)
                flat.push_back(&x);
        else
            flat.push_back(&e);
    }
    if (flat.size() != rows * cols)
        return fail("expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(flat.size()));
    std::vector<RingValue> values;
    values.reserve(flat.size());
    for (std::size_t k = 0; k < flat.size(); ++k) {
        const auto& e = *flat[k];
        std::string text;
        if (e.is_string())
            text = e.get<std::string>();
        else if (e.is_number_integer())
            text = e.dump();
        else
            return fail("entry " + std::to_string(k) + " must be a string or integer");
        try {
            values.push_back(parse_scalar(ring, text));
        } catch (const Error& err) {
            return fail("entry " + std::to_string(k) + ": " + err.what());
        }
    }
    return Matrix(ring, rows, cols, std::move(values));
}

} // namespace idem
