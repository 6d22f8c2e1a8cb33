#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cellsync/balance.hpp"
#include "cellsync/lattice.hpp"
#include "cellsync/network.hpp"
#include "cellsync/partition.hpp"

namespace cellsync {

/// Network file syntax or shape error, carrying the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    const std::size_t start = pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t' && line[pos] != '\r') ++pos;
    if (pos > start) words.push_back(line.substr(start, pos - start));
  }
  return words;
}

inline long long parse_int(std::string_view word, std::size_t line, const char* what) {
  long long value = 0;
  const auto* end = word.data() + word.size();
  auto [ptr, ec] = std::from_chars(word.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + std::string(word) + "'");
  return value;
}

inline bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  for (char c : name)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.')) return false;
  return true;
}

}  // namespace detail

/// Parses the line-oriented network format:
///
///     cells N
///     celltypes T1 ... TN        (optional, defaults to all 0)
///     arrowtype NAME
///     N rows of N integers       (row i, column j = arrows FROM j TO i)
///     arrowtype NAME ...
///
/// '#' starts a comment; blank lines are ignored.
inline Network parse_network(std::string_view text) {
  Network net;
  bool have_cells = false;
  bool have_celltypes = false;
  std::set<std::string> names;
  std::size_t pending_rows = 0;  // rows still expected for the current matrix
  std::size_t line_no = 0;
  std::size_t block_line = 0;

  for (std::size_t pos = 0; pos < text.size();) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto words = detail::split_words(line);
    if (words.empty()) continue;

    if (pending_rows > 0) {
      if (words[0] == "arrowtype" || words[0] == "cells" || words[0] == "celltypes")
        throw ParseError(line_no, "arrowtype '" + net.arrow_type_names.back() + "' has " +
                                      std::to_string(net.cells - pending_rows) + " rows, expected " +
                                      std::to_string(net.cells));
      if (words.size() != net.cells)
        throw ParseError(line_no, "matrix row has " + std::to_string(words.size()) + " entries, expected " +
                                      std::to_string(net.cells));
      IntMatrix& m = net.matrices.back();
      const std::size_t r = net.cells - pending_rows;
      for (std::size_t j = 0; j < words.size(); ++j) {
        const long long v = detail::parse_int(words[j], line_no, "matrix entry");
        if (v < 0) throw ParseError(line_no, "negative matrix entry " + std::to_string(v));
        m(r, j) = v;
      }
      --pending_rows;
      continue;
    }

    const std::string_view keyword = words[0];
    if (keyword == "cells") {
      if (have_cells) throw ParseError(line_no, "duplicate 'cells' line");
      if (words.size() != 2) throw ParseError(line_no, "expected 'cells N'");
      const long long n = detail::parse_int(words[1], line_no, "cell count");
      if (n < 1) throw ParseError(line_no, "cell count must be positive");
      net.cells = static_cast<std::size_t>(n);
      net.cell_types.assign(net.cells, 0);
      have_cells = true;
    } else if (!have_cells) {
      throw ParseError(line_no, "file must start with 'cells N'");
    } else if (keyword == "celltypes") {
      if (have_celltypes) throw ParseError(line_no, "duplicate 'celltypes' line");
      if (!net.matrices.empty()) throw ParseError(line_no, "'celltypes' must precede the first arrowtype");
      if (words.size() != net.cells + 1)
        throw ParseError(line_no, "expected " + std::to_string(net.cells) + " cell types, got " +
                                      std::to_string(words.size() - 1));
      for (std::size_t i = 0; i < net.cells; ++i)
        net.cell_types[i] = static_cast<CellType>(detail::parse_int(words[i + 1], line_no, "cell type"));
      have_celltypes = true;
    } else if (keyword == "arrowtype") {
      if (words.size() != 2 || !detail::is_identifier(words[1]))
        throw ParseError(line_no, "expected 'arrowtype NAME'");
      std::string name(words[1]);
      if (!names.insert(name).second) throw ParseError(line_no, "duplicate arrowtype name '" + name + "'");
      net.arrow_type_names.push_back(std::move(name));
      net.matrices.emplace_back(net.cells, net.cells);
      pending_rows = net.cells;
      block_line = line_no;
    } else {
      throw ParseError(line_no, "unexpected '" + std::string(keyword) + "'");
    }
  }

  if (!have_cells) throw ParseError(line_no, "missing 'cells N' header");
  if (pending_rows > 0)
    throw ParseError(line_no, "arrowtype '" + net.arrow_type_names.back() + "' (line " + std::to_string(block_line) +
                                  ") has " + std::to_string(net.cells - pending_rows) + " rows, expected " +
                                  std::to_string(net.cells));
  if (net.matrices.empty()) throw ParseError(line_no, "no arrowtype blocks");
  return net;
}

inline Network load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str());
}

/// Canonical document form of a network (celltypes line always present).
inline std::string write_network(const Network& net) {
  std::ostringstream out;
  out << "cells " << net.cells << '\n';
  out << "celltypes";
  for (CellType t : net.cell_types) out << ' ' << t;
  out << '\n';
  for (std::size_t k = 0; k < net.matrices.size(); ++k) {
    out << "arrowtype " << net.arrow_type_names[k] << '\n';
    const IntMatrix& m = net.matrices[k];
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
      out << '\n';
    }
  }
  return out.str();
}

/// One line per partition: "<rank> <normal form>".
inline std::string format_partitions(const std::vector<Partition>& partitions) {
  std::string out;
  for (const auto& p : partitions) out += std::to_string(p.rank()) + ' ' + to_normal_form(p) + '\n';
  return out;
}

inline std::string format_matrix(const IntMatrix& m, std::string_view indent = "  ") {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += indent;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += std::to_string(m(i, j));
    }
    out += '\n';
  }
  return out;
}

/// Per-arrow-type quotient matrices, labelled with the source partition.
inline std::string format_quotient(const QuotientNetwork& q) {
  std::string out = "quotient " + to_normal_form(q.source_partition) + " representatives";
  for (std::size_t r : q.representatives) out += ' ' + std::to_string(r + 1);
  out += '\n';
  for (std::size_t k = 0; k < q.quotient.matrices.size(); ++k) {
    out += "arrowtype " + q.quotient.arrow_type_names[k] + '\n';
    out += format_matrix(q.quotient.matrices[k]);
  }
  return out;
}

/// Node list followed by one "finer < coarser" line per covering pair.
inline std::string format_lattice(const Lattice& lat) {
  std::string out = "nodes " + std::to_string(lat.size()) + '\n';
  for (std::size_t i = 0; i < lat.size(); ++i)
    out += std::to_string(lat.ranks[i]) + ' ' + to_normal_form(lat.nodes[i]) + '\n';
  const auto pairs = lat.covering_pairs();
  out += "covering " + std::to_string(pairs.size()) + '\n';
  for (const auto& [finer, coarser] : pairs)
    out += to_normal_form(lat.nodes[finer]) + " < " + to_normal_form(lat.nodes[coarser]) + '\n';
  return out;
}

/// GraphViz digraph of the lattice: one node per balanced partition, one
/// edge per covering pair drawn from the coarser node down to the finer
/// one, and nodes of equal rank pinned to the same height.
inline std::string render_dot(const Lattice& lat) {
  std::string out = "digraph lattice {\n  rankdir=TB;\n  node [shape=box];\n  edge [dir=none];\n";
  for (std::size_t i = 0; i < lat.size(); ++i)
    out += "  n" + std::to_string(i) + " [label=\"" + to_normal_form(lat.nodes[i]) + "\"];\n";
  std::size_t i = 0;
  while (i < lat.size()) {
    std::size_t j = i;
    out += "  { rank=same;";
    for (; j < lat.size() && lat.ranks[j] == lat.ranks[i]; ++j) out += " n" + std::to_string(j) + ';';
    out += " }  // rank " + std::to_string(lat.ranks[i]) + '\n';
    i = j;
  }
  for (std::size_t c = 0; c < lat.size(); ++c)
    for (std::size_t f = c + 1; f < lat.size(); ++f)
      if (lat.covering.test(f, c)) out += "  n" + std::to_string(c) + " -> n" + std::to_string(f) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace cellsync
