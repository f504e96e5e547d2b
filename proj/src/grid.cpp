#include <flatfront/grid.hpp>

#include <algorithm>
#include <cstdlib>

namespace flatfront {

QuadGrid::QuadGrid(int rows, int cols)
    : m_rows(rows)
    , m_cols(cols)
{
    if (rows < 2 || cols < 2)
        throw Error(ErrorKind::InvalidArgument, "a quad grid needs at least 2x2 vertices");
}

bool QuadGrid::is_edge(const Edge& e) const noexcept
{
    if (!contains(e.from) || !contains(e.to)) return false;
    return std::abs(e.from.m - e.to.m) + std::abs(e.from.n - e.to.n) == 1;
}

std::size_t QuadGrid::edge_index(const Edge& e) const
{
    if (!is_edge(e)) throw Error(ErrorKind::InvalidArgument, "not an edge of the grid");
    const int m = std::min(e.from.m, e.to.m);
    const int n = std::min(e.from.n, e.to.n);
    const std::size_t horizontal = std::size_t(m_rows - 1) * std::size_t(m_cols);
    if (e.direction() == Direction::horizontal)
        return std::size_t(n) * std::size_t(m_rows - 1) + std::size_t(m);
    return horizontal + std::size_t(n) * std::size_t(m_rows) + std::size_t(m);
}

Edge QuadGrid::edge(std::size_t index) const
{
    const std::size_t horizontal = std::size_t(m_rows - 1) * std::size_t(m_cols);
    if (index < horizontal) {
        const int m = int(index % std::size_t(m_rows - 1));
        const int n = int(index / std::size_t(m_rows - 1));
        return {{m, n}, {m + 1, n}};
    }
    index -= horizontal;
    if (index >= std::size_t(m_rows) * std::size_t(m_cols - 1))
        throw Error(ErrorKind::InvalidArgument, "edge index out of range");
    const int m = int(index % std::size_t(m_rows));
    const int n = int(index / std::size_t(m_rows));
    return {{m, n}, {m, n + 1}};
}

std::array<Vertex, 4> QuadGrid::corners(Face f) const noexcept
{
    return {Vertex{f.m, f.n}, Vertex{f.m + 1, f.n}, Vertex{f.m + 1, f.n + 1}, Vertex{f.m, f.n + 1}};
}

std::array<Edge, 4> QuadGrid::boundary(Face f) const noexcept
{
    const auto [i, j, k, l] = corners(f);
    return {Edge{i, j}, Edge{j, k}, Edge{k, l}, Edge{l, i}};
}

Face QuadGrid::adjacent_face(const Edge& e) const
{
    if (!is_edge(e)) throw Error(ErrorKind::InvalidArgument, "not an edge of the grid");
    int m = std::min(e.from.m, e.to.m);
    int n = std::min(e.from.n, e.to.n);
    if (e.direction() == Direction::horizontal) {
        if (n == m_cols - 1) --n;
    } else if (m == m_rows - 1) {
        --m;
    }
    return {m, n};
}

std::vector<Edge> QuadGrid::edges() const
{
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (std::size_t k = 0; k < edge_count(); ++k) out.push_back(edge(k));
    return out;
}

std::vector<Face> QuadGrid::faces() const
{
    std::vector<Face> out;
    out.reserve(face_count());
    for (std::size_t k = 0; k < face_count(); ++k) out.push_back(face(k));
    return out;
}

std::vector<Edge> QuadGrid::spanning_tree(Vertex root) const
{
    if (!contains(root)) throw Error(ErrorKind::InvalidArgument, "root vertex outside grid");
    std::vector<Edge> out;
    out.reserve(vertex_count() - 1);
    for (int n = root.n; n + 1 < m_cols; ++n) out.push_back({{root.m, n}, {root.m, n + 1}});
    for (int n = root.n; n > 0; --n) out.push_back({{root.m, n}, {root.m, n - 1}});
    for (int n = 0; n < m_cols; ++n) {
        for (int m = root.m; m + 1 < m_rows; ++m) out.push_back({{m, n}, {m + 1, n}});
        for (int m = root.m; m > 0; --m) out.push_back({{m, n}, {m - 1, n}});
    }
    return out;
}

std::vector<Edge> QuadGrid::non_tree_edges(Vertex root) const
{
    std::vector<bool> in_tree(edge_count(), false);
    for (const auto& e : spanning_tree(root)) in_tree[edge_index(e)] = true;
    std::vector<Edge> out;
    for (std::size_t k = 0; k < edge_count(); ++k)
        if (!in_tree[k]) out.push_back(edge(k));
    return out;
}

EdgeLabelling EdgeLabelling::constant(const QuadGrid& grid, const Real& horizontal, const Real& vertical)
{
    return {std::vector<Real>(std::size_t(grid.rows() - 1), horizontal),
            std::vector<Real>(std::size_t(grid.cols() - 1), vertical)};
}

void EdgeLabelling::validate(const QuadGrid& grid) const
{
    if (alpha.size() != std::size_t(grid.rows() - 1) || beta.size() != std::size_t(grid.cols() - 1))
        throw Error(ErrorKind::InvalidArgument, "labelling size does not match grid");
    for (const auto& v : alpha)
        if (v == 0) throw Error(ErrorKind::InvalidArgument, "edge labels must be nonzero");
    for (const auto& v : beta)
        if (v == 0) throw Error(ErrorKind::InvalidArgument, "edge labels must be nonzero");
}

}  // namespace flatfront
