#include "dynexp/graph_io.h"

#include <fstream>
#include <sstream>

#include "dynexp/error.h"

namespace dynexp {

namespace {

[[noreturn]] void ParseFail(int line, const std::string& msg) {
  Fail(ErrorKind::kParse, "line " + std::to_string(line) + ": " + msg);
}

bool NextLine(std::istream& in, std::string& line, int& number) {
  while (std::getline(in, line)) {
    ++number;
    size_t p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    return true;
  }
  return false;
}

bool ReadInts(const std::string& line, int64_t& a, int64_t& b) {
  std::istringstream ss(line);
  std::string extra;
  if (!(ss >> a >> b)) return false;
  return !(ss >> extra);
}

}  // namespace

DynGraph ReadGraph(std::istream& in) {
  std::string line;
  int number = 0;
  if (!NextLine(in, line, number)) ParseFail(number + 1, "missing header 'n m'");
  int64_t n, m;
  if (!ReadInts(line, n, m) || n < 0 || m < 0) ParseFail(number, "expected 'n m'");
  if (n > (1 << 30)) ParseFail(number, "vertex count too large");
  DynGraph g(static_cast<int>(n));
  for (int64_t i = 0; i < m; ++i) {
    if (!NextLine(in, line, number)) ParseFail(number + 1, "expected " + std::to_string(m) + " edges");
    int64_t u, v;
    if (!ReadInts(line, u, v)) ParseFail(number, "expected 'u v', got '" + line + "'");
    if (u < 0 || v < 0 || u >= n || v >= n) ParseFail(number, "vertex out of range");
    g.InsertEdge(static_cast<int>(u), static_cast<int>(v));
  }
  if (NextLine(in, line, number)) ParseFail(number, "unexpected trailing line");
  return g;
}

DynGraph ReadGraphFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kNotFound, "cannot open " + path);
  return ReadGraph(in);
}

void WriteGraph(std::ostream& out, const DynGraph& g) {
  out << g.NumVertexSlots() << " " << g.NumEdges() << "\n";
  g.ForEachEdge([&](const Edge& e) { out << e.u << " " << e.v << "\n"; });
}

}  // namespace dynexp
