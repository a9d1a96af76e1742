#include "extremal/graph6.hpp"

#include <cstdint>

#include "extremal/errors.hpp"

namespace extremal {

namespace {

constexpr std::string_view kGraph6Header = ">>graph6<<";
constexpr std::string_view kDigraph6Header = ">>digraph6<<";

void append_size(std::string& out, int n) {
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else {
    // 63 <= n <= 258047: '~' then 18 bits.
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
}

class BitWriter {
 public:
  explicit BitWriter(std::string& out) : out_(out) {}
  void put(bool b) {
    acc_ = static_cast<std::uint8_t>((acc_ << 1) | (b ? 1 : 0));
    if (++count_ == 6) flush();
  }
  void finish() {
    if (count_ == 0) return;
    acc_ = static_cast<std::uint8_t>(acc_ << (6 - count_));
    flush();
  }

 private:
  void flush() {
    out_.push_back(static_cast<char>(63 + acc_));
    acc_ = 0;
    count_ = 0;
  }
  std::string& out_;
  std::uint8_t acc_ = 0;
  int count_ = 0;
};

class Reader {
 public:
  Reader(std::string_view text, std::size_t base) : text_(text), base_(base) {}

  std::size_t offset() const { return base_ + pos_; }
  bool at_end() const { return pos_ >= text_.size(); }

  int next_value(const char* context) {
    if (at_end()) throw ParseError(std::string("truncated ") + context, offset());
    const unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (c < 63 || c > 126) throw ParseError("character out of range", offset());
    ++pos_;
    return c - 63;
  }

  int read_size() {
    const int first = next_value("size header");
    if (first < 63) return first;
    const std::size_t start = offset() - 1;
    // '~' prefix: either 3 more groups (18 bits) or '~' again and 6 groups (36 bits).
    if (!at_end() && text_[pos_] == '~') {
      ++pos_;
      long long n = 0;
      for (int i = 0; i < 6; ++i) n = (n << 6) | next_value("size header");
      if (n < 258048) throw ParseError("non-canonical size header", start);
      throw SizeLimitError("graph order " + std::to_string(n) + " exceeds " + std::to_string(kMaxVertices));
    }
    int n = 0;
    for (int i = 0; i < 3; ++i) n = (n << 6) | next_value("size header");
    if (n < 63) throw ParseError("non-canonical size header", start);
    return n;
  }

  /// Reads `nbits` payload bits; calls sink(bit_index) for each set bit.
  template <class Sink>
  void read_bits(long long nbits, Sink&& sink) {
    long long k = 0;
    while (k < nbits) {
      const int value = next_value("bit stream");
      for (int b = 5; b >= 0; --b, ++k) {
        const bool set = (value >> b) & 1;
        if (k >= nbits) {
          if (set) throw ParseError("non-zero padding bits", offset() - 1);
          continue;
        }
        if (set) sink(k);
      }
    }
    if (!at_end()) throw ParseError("unexpected trailing bytes", offset());
  }

 private:
  std::string_view text_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

std::string_view strip(std::string_view text, std::string_view header, std::size_t& base) {
  base = 0;
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.starts_with(header)) {
    text.remove_prefix(header.size());
    base = header.size();
  }
  return text;
}

void check_limit(int n) {
  if (n > kMaxVertices) {
    throw SizeLimitError("graph order " + std::to_string(n) + " exceeds " + std::to_string(kMaxVertices));
  }
}

}  // namespace

std::string emit_graph6(const Graph& g) {
  const int n = g.num_vertices();
  std::string out;
  append_size(out, n);
  BitWriter w(out);
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) w.put(g.has_edge(i, j));
  }
  w.finish();
  return out;
}

Graph parse_graph6(std::string_view text) {
  std::size_t base = 0;
  text = strip(text, kGraph6Header, base);
  if (!text.empty() && text.front() == '&') throw ParseError("digraph6 string where graph6 expected", base);
  if (!text.empty() && text.front() == ':') throw ParseError("sparse6 is not supported", base);
  Reader r(text, base);
  const int n = r.read_size();
  check_limit(n);
  std::vector<Row> rows(n, 0);
  // Map the column-major upper-triangle index back to (i, j).
  int j = 1;
  int i = 0;
  long long expected = 0;
  r.read_bits(static_cast<long long>(n) * (n - 1) / 2, [&](long long k) {
    while (expected < k) {
      ++expected;
      if (++i == j) {
        ++j;
        i = 0;
      }
    }
    rows[i] |= bit(j);
    rows[j] |= bit(i);
  });
  return Graph::from_rows(std::move(rows));
}

std::string emit_digraph6(const Digraph& d) {
  const int n = d.num_vertices();
  std::string out = "&";
  append_size(out, n);
  BitWriter w(out);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w.put(d.has_arc(i, j));
  }
  w.finish();
  return out;
}

Digraph parse_digraph6(std::string_view text) {
  std::size_t base = 0;
  text = strip(text, kDigraph6Header, base);
  if (text.empty() || text.front() != '&') throw ParseError("digraph6 must start with '&'", base);
  text.remove_prefix(1);
  Reader r(text, base + 1);
  const int n = r.read_size();
  check_limit(n);
  std::vector<Row> rows(n, 0);
  r.read_bits(static_cast<long long>(n) * n, [&](long long k) {
    rows[k / n] |= bit(static_cast<int>(k % n));
  });
  return Digraph::from_rows(std::move(rows));
}

bool looks_like_digraph6(std::string_view text) {
  std::size_t base = 0;
  text = strip(text, kDigraph6Header, base);
  return !text.empty() && text.front() == '&';
}

}  // namespace extremal
