#pragma once

// Plain-text QCQP format. Whitespace separated, '#' starts a comment:
//
//   dim <n> <m>
//   Q            followed by n rows of n numbers
//   q            followed by one row of n numbers
//   Qj           followed by n rows       (Qj, qj, bj repeated m times;
//   qj           followed by one row       bj's row holds a single number)
//   bj           followed by one row
//   projection whole | orthant | box | ball <radius>
//
// "projection box" is followed by a row of lower and a row of upper bounds
// (inf / -inf allowed); "projection ball <r>" by a row with the center.

#include <plag/problems.hpp>
#include <plag/text.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

namespace plag {

namespace detail {

class QcqpParser {
 public:
  explicit QcqpParser(std::istream& in) : reader_(in) {}

  QcqpSpec parse() {
    auto header = expect_keyword("dim");
    if (header.size() != 3) fail("'dim' needs exactly two integers: dim <n> <m>");
    const auto n = text::parse_integer(header[1]);
    const auto m = text::parse_integer(header[2]);
    if (!n || *n <= 0) fail("invalid dimension n '" + std::string(header[1]) + "'");
    if (!m || *m < 0) fail("invalid constraint count m '" + std::string(header[2]) + "'");
    n_ = static_cast<Index>(*n);

    QcqpSpec spec;
    expect_bare("Q");
    spec.Q = read_matrix();
    expect_bare("q");
    spec.q = read_row(n_);
    for (long long j = 0; j < *m; ++j) {
      expect_bare("Qj");
      spec.Qj.push_back(read_matrix());
      expect_bare("qj");
      spec.qj.push_back(read_row(n_));
      expect_bare("bj");
      spec.bj.push_back(read_row(1)[0]);
    }
    spec.projection = read_projection();
    if (reader_.next()) fail("unexpected content after projection section");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, reader_.line()); }

  std::vector<std::string_view> next_tokens(const std::string& what) {
    auto line = reader_.next();
    if (!line) throw ParseError("unexpected end of input, expected " + what, reader_.line());
    return text::split(*line);
  }

  std::vector<std::string_view> expect_keyword(const std::string& key) {
    auto tokens = next_tokens("'" + key + "'");
    if (tokens.front() != key)
      fail("expected '" + key + "', found '" + std::string(tokens.front()) + "'");
    return tokens;
  }

  void expect_bare(const std::string& key) {
    if (expect_keyword(key).size() != 1) fail("'" + key + "' takes no inline values");
  }

  Vector read_row(Index expected) {
    const auto tokens = next_tokens(std::to_string(expected) + " numbers");
    if (static_cast<Index>(tokens.size()) != expected)
      fail("expected " + std::to_string(expected) + " numbers, found " +
           std::to_string(tokens.size()));
    Vector row(expected);
    for (Index i = 0; i < expected; ++i) {
      const auto value = text::parse_double(tokens[static_cast<std::size_t>(i)]);
      if (!value) fail("non-numeric token '" + std::string(tokens[static_cast<std::size_t>(i)]) + "'");
      row[i] = *value;
    }
    return row;
  }

  Matrix read_matrix() {
    Matrix a(n_, n_);
    for (Index i = 0; i < n_; ++i) a.row(i) = read_row(n_).transpose();
    return a;
  }

  ProjectionKind read_projection() {
    auto tokens = expect_keyword("projection");
    if (tokens.size() < 2) fail("'projection' needs a kind");
    const auto kind = tokens[1];
    auto arity = [&](std::size_t count) {
      if (tokens.size() != count) fail("wrong number of arguments for projection " + std::string(kind));
    };
    if (kind == "whole") {
      arity(2);
      return WholeSpace{};
    }
    if (kind == "orthant") {
      arity(2);
      return NonnegativeOrthant{};
    }
    if (kind == "box") {
      arity(2);
      Vector lo = read_row(n_);
      Vector hi = read_row(n_);
      try {
        return Box(std::move(lo), std::move(hi));
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    if (kind == "ball") {
      arity(3);
      const auto r = text::parse_double(tokens[2]);
      if (!r) fail("non-numeric token '" + std::string(tokens[2]) + "'");
      Vector center = read_row(n_);
      try {
        return Ball(std::move(center), *r);
      } catch (const Error& e) {
        fail(e.what());
      }
    }
    fail("unknown projection kind '" + std::string(kind) + "'");
  }

  text::LineReader reader_;
  Index n_ = 0;
};

}  // namespace detail

inline QcqpSpec parse_qcqp(std::istream& in) { return detail::QcqpParser(in).parse(); }

inline QcqpSpec read_qcqp_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open QCQP file '" + path.string() + "'", 0);
  return parse_qcqp(in);
}

inline Problem load_qcqp(const std::filesystem::path& path) {
  return from_qcqp(read_qcqp_file(path), path.stem().string());
}

inline void write_qcqp(std::ostream& out, const QcqpSpec& spec) {
  spec.validate();
  const Index n = spec.n();
  auto row = [&](const auto& v) {
    for (Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << text::format_short(v[i]);
    out << '\n';
  };
  auto matrix = [&](const Matrix& a) {
    for (Index i = 0; i < n; ++i) row(a.row(i));
  };
  out << "dim " << n << ' ' << spec.m() << '\n';
  out << "Q\n";
  matrix(spec.Q);
  out << "q\n";
  row(spec.q);
  for (Index j = 0; j < spec.m(); ++j) {
    const auto js = static_cast<std::size_t>(j);
    out << "# constraint " << j + 1 << "\nQj\n";
    matrix(spec.Qj[js]);
    out << "qj\n";
    row(spec.qj[js]);
    out << "bj\n" << text::format_short(spec.bj[js]) << '\n';
  }
  struct Writer {
    std::ostream& out;
    decltype(row)& write_row;
    void operator()(const WholeSpace&) const { out << "projection whole\n"; }
    void operator()(const NonnegativeOrthant&) const { out << "projection orthant\n"; }
    void operator()(const Box& b) const {
      out << "projection box\n";
      write_row(b.lower);
      write_row(b.upper);
    }
    void operator()(const Ball& b) const {
      out << "projection ball " << text::format_short(b.radius) << '\n';
      write_row(b.center);
    }
  };
  std::visit(Writer{out, row}, spec.projection);
}

}  // namespace plag
