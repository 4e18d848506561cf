#pragma once

#include "ctfpack/graph.hpp"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ctfpack {

class Graph6Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Short-form graph6 (n <= 62): header byte 63+n, then the upper triangle in
/// column order x01 x02 x12 x03 ..., six bits per byte, most significant first.
std::string graph6_encode(const Graph& g);
Graph graph6_decode(std::string_view text);

/// One graph per non-empty line; surrounding whitespace is ignored.
std::vector<Graph> read_graph6_stream(std::istream& in);

} // namespace ctfpack
