#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "nnt/error.hpp"
#include "nnt/tensor.hpp"
#include "parse_util.hpp"

namespace nnt {

namespace {

using detail::parse_count;
using detail::split_fields;

constexpr double kMinStoredValue = 1e-15;

double parse_value(std::string_view field, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || !std::isfinite(v)) {
    throw ParseError(line, "malformed value '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

SparseTensor load_tensor(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::size_t order = 0, dim = 0, nnz = 0;
  bool have_header = false;
  std::map<std::vector<Index>, std::size_t> seen;  // tuple -> defining line
  std::vector<Entry> entries;

  while (std::getline(in, raw)) {
    ++line_no;
    auto fields = split_fields(raw);
    if (fields.empty()) continue;

    if (!have_header) {
      if (fields.size() != 3) throw ParseError(line_no, "header must be 'm n nnz'");
      order = parse_count(fields[0], line_no, "order");
      dim = parse_count(fields[1], line_no, "dimension");
      nnz = parse_count(fields[2], line_no, "entry count");
      if (order < 2) throw ParseError(line_no, "order must be at least 2");
      if (dim < 1) throw ParseError(line_no, "dimension must be at least 1");
      have_header = true;
      entries.reserve(nnz);
      continue;
    }

    if (entries.size() == nnz) throw ParseError(line_no, "more entries than declared");
    if (fields.size() != order + 1) {
      throw ParseError(line_no, "expected " + std::to_string(order) + " indices and a value");
    }
    Entry e;
    e.index.reserve(order);
    for (std::size_t p = 0; p < order; ++p) {
      const auto i = parse_count(fields[p], line_no, "index");
      if (i < 1 || i > dim) {
        throw ParseError(line_no, "index " + std::to_string(i) + " out of range [1, " +
                                      std::to_string(dim) + "]");
      }
      e.index.push_back(static_cast<Index>(i - 1));
    }
    e.value = parse_value(fields[order], line_no);
    if (e.value < 0.0) throw ParseError(line_no, "negative value");
    if (e.value < kMinStoredValue) throw ParseError(line_no, "value below 1e-15 (explicit zero?)");
    if (auto [it, fresh] = seen.emplace(e.index, line_no); !fresh) {
      throw ParseError(line_no, "duplicate tuple (first given on line " +
                                    std::to_string(it->second) + ")");
    }
    entries.push_back(std::move(e));
  }
  if (!have_header) throw ParseError(std::max<std::size_t>(line_no, 1), "missing header");
  if (entries.size() != nnz) {
    throw ParseError(line_no, "declared " + std::to_string(nnz) + " entries, found " +
                                  std::to_string(entries.size()));
  }
  return SparseTensor::from_entries(order, dim, std::move(entries));
}

SparseTensor parse_tensor(std::string_view text) {
  std::istringstream in{std::string(text)};
  return load_tensor(in);
}

SparseTensor load_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_tensor(in);
}

std::string format_double(double v) {
  // shortest text that reads back to the same double
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void store_tensor(std::ostream& out, const SparseTensor& a) {
  out << a.order() << ' ' << a.dim() << ' ' << a.nnz() << '\n';
  for (std::size_t k = 0; k < a.nnz(); ++k) {
    for (Index i : a.index(k)) out << (i + 1) << ' ';
    out << format_double(a.value(k)) << '\n';
  }
}

std::string format_tensor(const SparseTensor& a) {
  std::ostringstream out;
  store_tensor(out, a);
  return out.str();
}

}  // namespace nnt
