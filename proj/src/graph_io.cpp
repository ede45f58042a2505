#include "blowup/graph_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "blowup/errors.hpp"

namespace blowup {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t to_index(std::string_view tok, std::size_t line_no) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                     std::string(tok) + "'");
  return value;
}

// Strips comments and blank lines, keeping 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) out.emplace_back(line_no, line);
  }
  return out;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("edge list: missing 'n <order>' header");
  auto header = tokens(lines.front().second);
  if (header.size() != 2 || header[0] != "n")
    throw ParseError("line " + std::to_string(lines.front().first) +
                     ": expected 'n <order>' header");
  const std::size_t n = to_index(header[1], lines.front().first);
  Graph g(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto [line_no, line] = lines[i];
    auto t = tokens(line);
    if (t.size() != 2)
      throw ParseError("line " + std::to_string(line_no) + ": expected 'u v'");
    const std::size_t u = to_index(t[0], line_no), v = to_index(t[1], line_no);
    if (u >= v) throw ParseError("line " + std::to_string(line_no) + ": expected u < v");
    if (v >= n) throw ParseError("line " + std::to_string(line_no) + ": vertex out of range");
    if (g.adjacent(static_cast<Vertex>(u), static_cast<Vertex>(v)))
      throw ParseError("line " + std::to_string(line_no) + ": duplicate edge");
    g.set_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return g;
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "n " << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph parse_graph6(std::string_view text) {
  std::string_view s = trim(text);
  if (s.starts_with(">>graph6<<")) s.remove_prefix(10);
  if (s.find('\n') != std::string_view::npos)
    throw ParseError("graph6: expected a single graph");
  for (char c : s)
    if (c < 63 || c > 126) throw ParseError("graph6: byte out of range");
  if (s.empty()) throw ParseError("graph6: empty input");

  auto take = [&](std::size_t count) {
    if (s.size() < count) throw ParseError("graph6: truncated order header");
    std::size_t value = 0;
    for (std::size_t i = 0; i < count; ++i) value = (value << 6) | static_cast<std::size_t>(s[i] - 63);
    s.remove_prefix(count);
    return value;
  };
  std::size_t n;
  if (s[0] != 126) {
    n = take(1);
  } else if (s.size() >= 2 && s[1] != 126) {
    s.remove_prefix(1);
    n = take(3);
  } else {
    s.remove_prefix(2);
    n = take(6);
  }
  const std::size_t bits = n * (n > 0 ? n - 1 : 0) / 2;
  if (s.size() != (bits + 5) / 6) throw ParseError("graph6: wrong body length for order " + std::to_string(n));
  Graph g(n);
  std::size_t pos = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i, ++pos) {
      const int group = s[pos / 6] - 63;
      if ((group >> (5 - pos % 6)) & 1) g.set_edge(static_cast<Vertex>(i), static_cast<Vertex>(j));
    }
  for (; pos < s.size() * 6; ++pos)
    if (((s[pos / 6] - 63) >> (5 - pos % 6)) & 1) throw ParseError("graph6: nonzero padding");
  return g;
}

std::string write_graph6(const Graph& g) {
  const std::size_t n = g.order();
  std::string out;
  auto put = [&](std::size_t value, std::size_t groups) {
    for (std::size_t i = groups; i-- > 0;) out.push_back(static_cast<char>(((value >> (6 * i)) & 63) + 63));
  };
  if (n <= 62) {
    put(n, 1);
  } else if (n <= 258047) {
    out.push_back(126);
    put(n, 3);
  } else {
    out.append(2, static_cast<char>(126));
    put(n, 6);
  }
  int group = 0, filled = 0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      group = (group << 1) | (g.adjacent(static_cast<Vertex>(i), static_cast<Vertex>(j)) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(group + 63));
        group = filled = 0;
      }
    }
  if (filled > 0) out.push_back(static_cast<char>((group << (6 - filled)) + 63));
  return out;
}

Graph parse_graph(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError("empty graph input");
  auto first = tokens(lines.front().second);
  if (!first.empty() && first[0] == "n") return parse_edge_list(text);
  if (lines.size() != 1) throw ParseError("unrecognized graph format");
  return parse_graph6(lines.front().second);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph read_graph_file(const std::filesystem::path& path) { return parse_graph(read_text_file(path)); }

}  // namespace blowup
