#include "hamcount/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <vector>

#include "hamcount/errors.hpp"

namespace hamcount {

namespace {

// Yields whitespace-split tokens of data lines, skipping comments and blanks.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  // Next data line split into tokens; false at end of input.
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      std::size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      tokens.clear();
      std::istringstream ss(line);
      for (std::string tok; ss >> tok;) tokens.push_back(tok);
      return true;
    }
    return false;
  }

  std::size_t line() const { return line_no_; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_no_, what); }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

long long parse_int(const LineReader& r, const std::string& tok, const char* what) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) r.fail(std::string("expected integer ") + what + ", got '" + tok + "'");
  return v;
}

double parse_real(const LineReader& r, const std::string& tok, const char* what) {
  // strtod accepts the decimal forms we write; reject trailing junk and non-finite values.
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || !std::isfinite(v)) {
    r.fail(std::string("expected number ") + what + ", got '" + tok + "'");
  }
  return v;
}

struct Header {
  int n;
  long long m;
};

Header read_header(LineReader& r) {
  std::vector<std::string> tok;
  if (!r.next(tok)) throw ParseError(r.line(), "missing header line `n m`");
  if (tok.size() != 2) r.fail("header must be `n m`");
  const long long n = parse_int(r, tok[0], "vertex count");
  const long long m = parse_int(r, tok[1], "edge count");
  if (n < 1 || n > 1'000'000) r.fail("vertex count out of range");
  if (m < 0) r.fail("edge count must be nonnegative");
  return {static_cast<int>(n), m};
}

void expect_end(LineReader& r) {
  std::vector<std::string> tok;
  if (r.next(tok)) r.fail("unexpected data after the declared entries");
}

int parse_vertex(const LineReader& r, const std::string& tok, int n) {
  const long long v = parse_int(r, tok, "vertex");
  if (v < 1 || v > n) r.fail("vertex " + tok + " outside 1.." + std::to_string(n));
  return static_cast<int>(v);
}

}  // namespace

WeightedDigraph read_digraph(std::istream& in) {
  LineReader r(in);
  const Header h = read_header(r);
  std::vector<Edge> edges;
  std::vector<char> seen(static_cast<std::size_t>(h.n) * h.n, 0);
  std::vector<std::string> tok;
  for (long long k = 0; k < h.m; ++k) {
    if (!r.next(tok)) throw ParseError(r.line(), "expected " + std::to_string(h.m) + " edge lines, found " + std::to_string(k));
    if (tok.size() != 2 && tok.size() != 3) r.fail("edge line must be `tail head [weight]`");
    Edge e{parse_vertex(r, tok[0], h.n), parse_vertex(r, tok[1], h.n), 1.0};
    if (tok.size() == 3) e.weight = parse_real(r, tok[2], "weight");
    if (e.tail == e.head) r.fail("self-loop at vertex " + tok[0]);
    if (!(e.weight > 0.0)) r.fail("weight must be positive");
    char& slot = seen[static_cast<std::size_t>(e.tail - 1) * h.n + (e.head - 1)];
    if (slot) r.fail("duplicate arc " + tok[0] + " " + tok[1]);
    slot = 1;
    edges.push_back(e);
  }
  expect_end(r);
  return WeightedDigraph(h.n, std::move(edges));
}

UndirectedGraph read_undirected(std::istream& in) {
  LineReader r(in);
  const Header h = read_header(r);
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<char> seen(static_cast<std::size_t>(h.n) * h.n, 0);
  std::vector<std::string> tok;
  for (long long k = 0; k < h.m; ++k) {
    if (!r.next(tok)) throw ParseError(r.line(), "expected " + std::to_string(h.m) + " edge lines, found " + std::to_string(k));
    if (tok.size() != 2) r.fail("edge line must be `u v`");
    const int u = parse_vertex(r, tok[0], h.n);
    const int v = parse_vertex(r, tok[1], h.n);
    if (u == v) r.fail("self-loop at vertex " + tok[0]);
    char& slot = seen[static_cast<std::size_t>(std::min(u, v) - 1) * h.n + (std::max(u, v) - 1)];
    if (slot) r.fail("duplicate edge " + tok[0] + " " + tok[1]);
    slot = 1;
    edges.emplace_back(u, v);
  }
  expect_end(r);
  return UndirectedGraph(h.n, std::move(edges));
}

LogMatrix read_matrix(std::istream& in) {
  LineReader r(in);
  std::vector<std::string> tok;
  if (!r.next(tok)) throw ParseError(r.line(), "missing header line `n`");
  if (tok.size() != 1) r.fail("header must be `n`");
  const long long n = parse_int(r, tok[0], "order");
  if (n < 1 || n > 100'000) r.fail("order out of range");
  LogMatrix a(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    if (!r.next(tok)) throw ParseError(r.line(), "expected " + std::to_string(n) + " matrix rows, found " + std::to_string(i));
    if (static_cast<long long>(tok.size()) != n) r.fail("row must have " + std::to_string(n) + " entries");
    for (long long j = 0; j < n; ++j) {
      const double v = parse_real(r, tok[j], "entry");
      if (v < 0.0) r.fail("negative entry");
      a.set_value(static_cast<std::size_t>(i), static_cast<std::size_t>(j), v);
    }
  }
  expect_end(r);
  return a;
}

WeightedDigraph digraph_from_matrix(const LogMatrix& a) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < a.order(); ++i) {
    if (!a.is_zero(i, i)) throw DomainError("matrix has a nonzero diagonal entry at row " + std::to_string(i + 1));
    for (std::size_t j = 0; j < a.order(); ++j)
      if (i != j && !a.is_zero(i, j)) edges.push_back({static_cast<int>(i) + 1, static_cast<int>(j) + 1, a.value(i, j)});
  }
  return WeightedDigraph(static_cast<int>(a.order()), std::move(edges));
}

void write_digraph(std::ostream& out, const WeightedDigraph& g) {
  out << g.n() << ' ' << g.edge_count() << '\n';
  char buf[64];
  for (const Edge& e : g.edges()) {
    out << e.tail << ' ' << e.head;
    if (e.weight != 1.0) {
      std::snprintf(buf, sizeof buf, "%.17g", e.weight);
      out << ' ' << buf;
    }
    out << '\n';
  }
}

void write_undirected(std::ostream& out, const UndirectedGraph& g) {
  out << g.n() << ' ' << g.edges().size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace hamcount
