#pragma once

// Line-oriented matrix documents:
//
//   # comment
//   gcm 3          (or: gram 3, facets K)
//   2 -1 0
//   ...
//
// A facets document has K rows of equal length.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "../arith.hpp"
#include "../error.hpp"

namespace kmarith::cli {

struct MatrixDocument {
  std::string kind;  // "gcm", "gram" or "facets"
  std::size_t size = 0;
  std::vector<IntVector> rows;

  IntMatrix matrix() const { return rows_to_matrix(rows, rows.empty() ? 0 : rows.front().size()); }
};

inline bool parse_integer(const std::string& tok, Int& out) {
  std::size_t start = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
  if (start == tok.size()) return false;
  for (std::size_t i = start; i < tok.size(); ++i)
    if (tok[i] < '0' || tok[i] > '9') return false;
  out.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10);
  return true;
}

inline MatrixDocument parse_document(const std::string& text) {
  MatrixDocument doc;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (!header) {
      if (toks.size() != 2 || (toks[0] != "gcm" && toks[0] != "gram" && toks[0] != "facets"))
        throw Error(Errc::Parse, "line " + std::to_string(lineno) + ": expected 'gcm N', 'gram N' or 'facets N'");
      Int n;
      if (!parse_integer(toks[1], n) || n < 1 || n > 10000)
        throw Error(Errc::Parse, "line " + std::to_string(lineno) + ": bad size");
      doc.kind = toks[0];
      doc.size = n.get_ui();
      header = true;
      continue;
    }
    IntVector row;
    for (const auto& t : toks) {
      Int v;
      if (!parse_integer(t, v))
        throw Error(Errc::Parse, "line " + std::to_string(lineno) + ": not an integer: '" + t + "'");
      row.push_back(v);
    }
    if (!doc.rows.empty() && row.size() != doc.rows.front().size())
      throw Error(Errc::Parse, "line " + std::to_string(lineno) + ": row length differs from the first row");
    doc.rows.push_back(std::move(row));
  }
  if (!header) throw Error(Errc::Parse, "empty document");
  if (doc.rows.size() != doc.size)
    throw Error(Errc::Parse, "expected " + std::to_string(doc.size) + " rows, found " + std::to_string(doc.rows.size()));
  if (doc.kind != "facets" && doc.rows.front().size() != doc.size)
    throw Error(Errc::NonSquare, "matrix must be square");
  return doc;
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// "1,2,2" -> {1, 2, 2}
inline std::vector<Int> parse_int_list(const std::string& spec) {
  std::vector<Int> out;
  std::stringstream ss(spec);
  for (std::string t; std::getline(ss, t, ',');) {
    Int v;
    if (t.empty() || !parse_integer(t, v)) throw Error(Errc::Parse, "bad integer list: '" + spec + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace kmarith::cli
