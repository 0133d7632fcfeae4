#include "corrgraph/trace_io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "corrgraph/corrpost.hpp"
#include "corrgraph/error.hpp"

namespace corrgraph {

namespace {

void put_real(std::ostream& out, double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", v);
  out << ' ' << buf;
}

class Tokens {
 public:
  Tokens(const std::string& line, const std::string& source, std::size_t line_no)
      : in_(line), source_(source), line_no_(line_no) {}

  std::string word() {
    std::string w;
    if (!(in_ >> w)) fail("unexpected end of line");
    return w;
  }

  double real() {
    const std::string w = word();
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(w.c_str(), &end);
    if (end != w.c_str() + w.size() || errno == ERANGE) fail("bad real '" + w + "'");
    return v;
  }

  std::uint64_t count() {
    const std::string w = word();
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(w, &used);
    } catch (const std::exception&) {
      fail("bad integer '" + w + "'");
    }
    if (used != w.size() || w.front() == '-') fail("bad integer '" + w + "'");
    return v;
  }

  std::string rest() {
    std::string r;
    std::getline(in_ >> std::ws, r);
    return r;
  }

  void expect_end() {
    std::string extra;
    if (in_ >> extra) fail("trailing field '" + extra + "'");
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(source_, line_no_, what); }

 private:
  std::istringstream in_;
  const std::string& source_;
  std::size_t line_no_;
};

}  // namespace

TraceWriter::TraceWriter(std::ostream& out, std::size_t p, std::size_t burn_in, bool with_gamma,
                         const std::vector<std::string>& column_names)
    : out_(out), p_(p), with_gamma_(with_gamma) {
  out_ << "corrgraph-trace 1\n";
  out_ << "p " << p << '\n';
  out_ << "burn_in " << burn_in << '\n';
  out_ << "gamma " << (with_gamma ? 1 : 0) << '\n';
  for (std::size_t i = 0; i < p; ++i) {
    out_ << "column " << i << ' ' << (i < column_names.size() ? column_names[i] : "V" + std::to_string(i + 1))
         << '\n';
  }
}

void TraceWriter::append(const TraceRecord& r) {
  const std::size_t m = pair_count(p_);
  if (r.corr.size() != m || r.partial.size() != m || r.edges.size() != m || r.variances.size() != m ||
      r.gamma.size() != (with_gamma_ ? p_ : 0))
    throw InputError("trace record does not match the trace header");
  out_ << "r " << r.iteration;
  put_real(out_, r.log_post_corr);
  put_real(out_, r.log_post_graph);
  put_real(out_, r.log_c_hat);
  for (double v : r.corr) put_real(out_, v);
  for (double v : r.partial) put_real(out_, v);
  for (auto g : r.edges) out_ << ' ' << int(g);
  for (double v : r.variances) put_real(out_, v);
  for (double v : r.gamma) put_real(out_, v);
  out_ << '\n';
  ++written_;
}

void TraceWriter::finish(const AcceptanceCounts& c) {
  out_ << "end " << written_ << ' ' << c.corr_proposed << ' ' << c.corr_accepted << ' ' << c.graph_proposed << ' '
       << c.graph_accepted << '\n';
  out_.flush();
}

void write_trace(std::ostream& out, const ChainTrace& trace) {
  const bool with_gamma = !trace.records.empty() && !trace.records.front().gamma.empty();
  TraceWriter w(out, trace.p, trace.burn_in, with_gamma, trace.column_names);
  for (const auto& r : trace.records) w.append(r);
  w.finish(trace.acceptance);
}

void save_trace(const std::filesystem::path& path, const ChainTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write trace file: " + path.string());
  write_trace(out, trace);
  if (!out) throw IoError("error while writing trace file: " + path.string());
}

ChainTrace read_trace(std::istream& in, const std::string& source) {
  ChainTrace trace;
  std::string line;
  std::size_t line_no = 0;
  auto next = [&](const char* what) -> Tokens {
    if (!std::getline(in, line)) throw ParseError(source, line_no + 1, std::string("missing ") + what);
    ++line_no;
    return Tokens(line, source, line_no);
  };

  {
    auto t = next("header");
    if (t.word() != "corrgraph-trace" || t.count() != 1) t.fail("not a version-1 corrgraph trace");
  }
  {
    auto t = next("p");
    if (t.word() != "p") t.fail("expected 'p'");
    trace.p = t.count();
    if (trace.p < 1) t.fail("p must be positive");
  }
  {
    auto t = next("burn_in");
    if (t.word() != "burn_in") t.fail("expected 'burn_in'");
    trace.burn_in = t.count();
  }
  bool with_gamma = false;
  {
    auto t = next("gamma");
    if (t.word() != "gamma") t.fail("expected 'gamma'");
    const auto g = t.count();
    if (g > 1) t.fail("gamma flag must be 0 or 1");
    with_gamma = g == 1;
  }
  for (std::size_t i = 0; i < trace.p; ++i) {
    auto t = next("column");
    if (t.word() != "column" || t.count() != i) t.fail("expected 'column " + std::to_string(i) + "'");
    trace.column_names.push_back(t.rest());
  }

  const std::size_t m = pair_count(trace.p);
  while (true) {
    auto t = next("'end' trailer");
    const std::string kind = t.word();
    if (kind == "end") {
      const auto n = t.count();
      if (n != trace.records.size()) t.fail("record count does not match trailer");
      trace.acceptance.corr_proposed = t.count();
      trace.acceptance.corr_accepted = t.count();
      trace.acceptance.graph_proposed = t.count();
      trace.acceptance.graph_accepted = t.count();
      t.expect_end();
      break;
    }
    if (kind != "r") t.fail("expected a record ('r') or the trailer ('end')");
    TraceRecord r;
    r.iteration = t.count();
    r.log_post_corr = t.real();
    r.log_post_graph = t.real();
    r.log_c_hat = t.real();
    r.corr.resize(m);
    r.partial.resize(m);
    r.edges.resize(m);
    r.variances.resize(m);
    for (auto& v : r.corr) v = t.real();
    for (auto& v : r.partial) v = t.real();
    for (auto& g : r.edges) {
      const auto v = t.count();
      if (v > 1) t.fail("edge indicator must be 0 or 1");
      g = static_cast<std::uint8_t>(v);
    }
    for (auto& v : r.variances) v = t.real();
    if (with_gamma) {
      r.gamma.resize(trace.p);
      for (auto& v : r.gamma) v = t.real();
    }
    t.expect_end();
    trace.records.push_back(std::move(r));
  }
  if (trace.records.empty()) throw EmptyTrace(source + ": trace has no records");
  return trace;
}

ChainTrace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open trace file: " + path.string());
  return read_trace(in, path.string());
}

}  // namespace corrgraph
