#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "corrgraph/trace.hpp"

namespace corrgraph {

// Line-oriented trace file. Header lines, one record line per iteration,
// then a trailer:
//
//   corrgraph-trace 1
//   p <p>
//   burn_in <index>
//   gamma <0|1>
//   column <index> <name to end of line>      (p lines)
//   r <iteration> <log_post_corr> <log_post_graph> <log_c_hat>
//     <S_ij x m> <rho_ij x m> <g_ij x m> <sigma2_ij x m> [<gamma_i x p>]
//   end <records> <corr_proposed> <corr_accepted> <graph_proposed> <graph_accepted>
//
// m = p(p-1)/2, pairs in row-major upper-triangle order. Reals are written
// as C99 hex floats so that a reload is bit-exact. Fields are separated by
// single spaces; a record is one line.

class TraceWriter {
 public:
  /// Writes the header; records are appended as they arrive.
  TraceWriter(std::ostream& out, std::size_t p, std::size_t burn_in, bool with_gamma,
              const std::vector<std::string>& column_names);
  void append(const TraceRecord& r);
  void finish(const AcceptanceCounts& counts);

 private:
  std::ostream& out_;
  std::size_t p_;
  bool with_gamma_;
  std::size_t written_ = 0;
};

void write_trace(std::ostream& out, const ChainTrace& trace);
void save_trace(const std::filesystem::path& path, const ChainTrace& trace);

/// Throws ParseError naming the offending line.
ChainTrace read_trace(std::istream& in, const std::string& source = "<trace>");
ChainTrace load_trace(const std::filesystem::path& path);

}  // namespace corrgraph
