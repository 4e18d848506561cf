#include "ctfpack/graph6.hpp"

#include <istream>

namespace ctfpack {

namespace {

    std::size_t payload_bytes(int n)
    {
        const std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
        return (bits + 5) / 6;
    }

} // namespace

std::string graph6_encode(const Graph& g)
{
    const int n = g.order();
    std::string out;
    out.reserve(1 + payload_bytes(n));
    out.push_back(static_cast<char>(63 + n));
    int acc = 0;
    int filled = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
            if (++filled == 6) {
                out.push_back(static_cast<char>(63 + acc));
                acc = 0;
                filled = 0;
            }
        }
    if (filled > 0)
        out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
    return out;
}

Graph graph6_decode(std::string_view text)
{
    if (text.starts_with(">>graph6<<"))
        text.remove_prefix(10);
    if (text.empty())
        throw Graph6Error("graph6: empty input");
    const int header = static_cast<unsigned char>(text[0]);
    if (header < 63 || header > 63 + kMaxVertices)
        throw Graph6Error("graph6: bad header byte " + std::to_string(header));
    const int n = header - 63;
    const std::size_t need = payload_bytes(n);
    if (text.size() - 1 < need)
        throw Graph6Error("graph6: short payload for n=" + std::to_string(n));
    if (text.size() - 1 > need)
        throw Graph6Error("graph6: trailing bytes after payload");

    Graph g(n);
    std::size_t pos = 1;
    int bits_left = 0;
    int current = 0;
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            if (bits_left == 0) {
                current = static_cast<unsigned char>(text[pos]);
                if (current < 63 || current > 126)
                    throw Graph6Error("graph6: byte out of range at offset " + std::to_string(pos));
                current -= 63;
                ++pos;
                bits_left = 6;
            }
            --bits_left;
            if ((current >> bits_left) & 1)
                g.add_edge(i, j);
        }
    if (bits_left > 0 && (current & ((1 << bits_left) - 1)) != 0)
        throw Graph6Error("graph6: nonzero padding bits");
    return g;
}

std::vector<Graph> read_graph6_stream(std::istream& in)
{
    std::vector<Graph> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r\n");
        if (first == std::string::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r\n");
        out.push_back(graph6_decode(std::string_view(line).substr(first, last - first + 1)));
    }
    return out;
}

} // namespace ctfpack
