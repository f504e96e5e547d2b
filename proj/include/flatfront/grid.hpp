#pragma once

// Rectangular quad grids, edge-labellings, and the discrete calculus on them:
// derived functions, derivatives, and path integration of closed edge forms.

#include <flatfront/core.hpp>

#include <array>
#include <cstddef>
#include <vector>

namespace flatfront {

struct Vertex
{
    int m = 0;
    int n = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

enum class Direction : std::uint8_t { horizontal, vertical };

/// Oriented edge between lattice neighbours.
struct Edge
{
    Vertex from;
    Vertex to;

    Direction direction() const { return from.n == to.n ? Direction::horizontal : Direction::vertical; }
    /// True if the edge points in +m or +n direction.
    bool positive() const { return to.m + to.n > from.m + from.n; }
    Edge reversed() const { return {to, from}; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Face identified by its lower-left corner (m, n).
struct Face
{
    int m = 0;
    int n = 0;
    friend bool operator==(const Face&, const Face&) = default;
};

/// Simply connected rectangular cell complex with rows x cols vertices.
///
/// rows counts vertices along the m direction and cols along n. Vertices are
/// numbered m fastest, index = n * rows + m, and faces the same way by their
/// lower-left corner. Faces are oriented counterclockwise:
/// (i, j, k, l) = ((m, n), (m+1, n), (m+1, n+1), (m, n+1)).
class QuadGrid
{
public:
    QuadGrid() = default;
    QuadGrid(int rows, int cols);

    int rows() const noexcept { return m_rows; }
    int cols() const noexcept { return m_cols; }

    std::size_t vertex_count() const noexcept { return std::size_t(m_rows) * std::size_t(m_cols); }
    std::size_t face_count() const noexcept
    {
        return std::size_t(m_rows - 1) * std::size_t(m_cols - 1);
    }
    std::size_t edge_count() const noexcept
    {
        return std::size_t(m_rows - 1) * std::size_t(m_cols) + std::size_t(m_rows) * std::size_t(m_cols - 1);
    }

    bool contains(Vertex v) const noexcept { return v.m >= 0 && v.n >= 0 && v.m < m_rows && v.n < m_cols; }
    bool is_edge(const Edge& e) const noexcept;

    std::size_t index(Vertex v) const noexcept { return std::size_t(v.n) * std::size_t(m_rows) + std::size_t(v.m); }
    Vertex vertex(std::size_t index) const noexcept
    {
        return {int(index % std::size_t(m_rows)), int(index / std::size_t(m_rows))};
    }

    /// Index of the unoriented edge: horizontal edges first, then vertical.
    std::size_t edge_index(const Edge& e) const;
    /// Positively oriented edge with the given index.
    Edge edge(std::size_t index) const;

    std::size_t face_index(Face f) const noexcept
    {
        return std::size_t(f.n) * std::size_t(m_rows - 1) + std::size_t(f.m);
    }
    Face face(std::size_t index) const noexcept
    {
        return {int(index % std::size_t(m_rows - 1)), int(index / std::size_t(m_rows - 1))};
    }

    /// Corners (i, j, k, l) of a face.
    std::array<Vertex, 4> corners(Face f) const noexcept;
    /// Boundary edges (ij), (jk), (kl), (li) of a face.
    std::array<Edge, 4> boundary(Face f) const noexcept;
    /// Some face containing the (unoriented) edge.
    Face adjacent_face(const Edge& e) const;

    /// All positively oriented edges, ordered by edge_index.
    std::vector<Edge> edges() const;
    std::vector<Face> faces() const;

    /// Edges of the spanning tree rooted at root, oriented away from the root
    /// and listed in propagation order: first along the column m = root.m,
    /// then outwards along every row.
    std::vector<Edge> spanning_tree(Vertex root) const;
    /// Edges (positively oriented) not contained in spanning_tree(root).
    std::vector<Edge> non_tree_edges(Vertex root) const;

    friend bool operator==(const QuadGrid&, const QuadGrid&) = default;

private:
    int m_rows = 2;
    int m_cols = 2;
};

/// Real edge-labelling on a rectangular grid. Labels attach to unoriented
/// edges and are equal on opposite edges of each face, so one value per
/// m step (alpha) and one per n step (beta) determine it.
struct EdgeLabelling
{
    std::vector<Real> alpha;  // rows - 1 entries
    std::vector<Real> beta;   // cols - 1 entries

    static EdgeLabelling constant(const QuadGrid& grid, const Real& horizontal, const Real& vertical);

    Real operator()(const Edge& e) const
    {
        return e.direction() == Direction::horizontal ? alpha[std::size_t(std::min(e.from.m, e.to.m))]
                                                      : beta[std::size_t(std::min(e.from.n, e.to.n))];
    }

    /// Throws InvalidArgument unless the sizes match grid and all labels are nonzero.
    void validate(const QuadGrid& grid) const;

    friend bool operator==(const EdgeLabelling&, const EdgeLabelling&) = default;
};

/// Value per vertex, stored in vertex index order.
template <class V>
class VertexField
{
public:
    VertexField() = default;
    explicit VertexField(const QuadGrid& grid, const V& init = V{})
        : m_grid(grid)
        , m_values(grid.vertex_count(), init)
    {}

    const QuadGrid& grid() const noexcept { return m_grid; }
    std::size_t size() const noexcept { return m_values.size(); }

    V& operator[](Vertex v) { return m_values[m_grid.index(v)]; }
    const V& operator[](Vertex v) const { return m_values[m_grid.index(v)]; }
    V& at(std::size_t i) { return m_values.at(i); }
    const V& at(std::size_t i) const { return m_values.at(i); }

    std::vector<V>& values() noexcept { return m_values; }
    const std::vector<V>& values() const noexcept { return m_values; }

    friend bool operator==(const VertexField&, const VertexField&) = default;

private:
    QuadGrid m_grid;
    std::vector<V> m_values;
};

/// Discrete 1-form: one value per oriented edge with w_ji = -w_ij. Only the
/// positively oriented value is stored.
template <class V>
class EdgeForm
{
public:
    EdgeForm() = default;
    explicit EdgeForm(const QuadGrid& grid)
        : m_grid(grid)
        , m_values(grid.edge_count(), V{})
    {}

    const QuadGrid& grid() const noexcept { return m_grid; }

    V operator()(const Edge& e) const
    {
        const V& v = m_values[m_grid.edge_index(e)];
        return e.positive() ? v : V(-v);
    }
    void set(const Edge& e, const V& value)
    {
        m_values[m_grid.edge_index(e)] = e.positive() ? value : V(-value);
    }

    const std::vector<V>& values() const noexcept { return m_values; }

private:
    QuadGrid m_grid;
    std::vector<V> m_values;
};

/// Independent value per oriented edge (both orientations stored).
template <class V>
class EdgeField
{
public:
    EdgeField() = default;
    explicit EdgeField(const QuadGrid& grid)
        : m_grid(grid)
        , m_forward(grid.edge_count())
        , m_backward(grid.edge_count())
    {}

    const QuadGrid& grid() const noexcept { return m_grid; }

    V& operator[](const Edge& e)
    {
        return e.positive() ? m_forward[m_grid.edge_index(e)] : m_backward[m_grid.edge_index(e)];
    }
    const V& operator[](const Edge& e) const
    {
        return e.positive() ? m_forward[m_grid.edge_index(e)] : m_backward[m_grid.edge_index(e)];
    }

private:
    QuadGrid m_grid;
    std::vector<V> m_forward;
    std::vector<V> m_backward;
};

/// Derived (edge midpoint) value (f_i + f_j) / 2.
template <class V>
V derived(const VertexField<V>& f, const Edge& e)
{
    return V((f[e.from] + f[e.to]) / 2);
}

/// Discrete derivative df_ij = f_j - f_i.
template <class V>
V derivative(const VertexField<V>& f, const Edge& e)
{
    return V(f[e.to] - f[e.from]);
}

template <class V>
EdgeForm<V> derivative(const VertexField<V>& f)
{
    EdgeForm<V> out(f.grid());
    for (const auto& e : f.grid().edges()) out.set(e, derivative(f, e));
    return out;
}

/// Oriented sum of w around every face.
template <class V>
std::vector<V> face_circulations(const EdgeForm<V>& w)
{
    const auto& grid = w.grid();
    std::vector<V> out;
    out.reserve(grid.face_count());
    for (const auto& f : grid.faces()) {
        V sum{};
        for (const auto& e : grid.boundary(f)) sum = V(sum + w(e));
        out.push_back(sum);
    }
    return out;
}

/// Face circulations relative to max(max |w|, 1).
template <class V>
Residuals closedness(const EdgeForm<V>& w)
{
    Real scale = 1;
    for (const auto& v : w.values()) scale = std::max(scale, Real(abs(v)));
    Residuals out;
    for (const auto& c : face_circulations(w)) out.values.push_back(Real(abs(c)) / scale);
    return out;
}

/// Integrates a closed edge form: returns f with f(root) = root_value and
/// df = w. Throws NotClosed(face, residual) if some face circulation exceeds
/// tol * max(max |w|, 1).
template <class V>
VertexField<V> integrate_edge_form(const EdgeForm<V>& w, Vertex root, const V& root_value,
                                   const Real& tol = default_tolerances().closed)
{
    const auto& grid = w.grid();
    if (!grid.contains(root)) throw Error(ErrorKind::InvalidArgument, "root vertex outside grid");
    const Residuals closure = closedness(w);
    if (auto worst = closure.worst(); worst && closure.values[*worst] > tol)
        throw Error(ErrorKind::NotClosed, "edge form is not closed", *worst,
                    to_double(closure.values[*worst]));
    VertexField<V> f(grid);
    f[root] = root_value;
    for (const auto& e : grid.spanning_tree(root)) f[e.to] = V(f[e.from] + w(e));
    return f;
}

}  // namespace flatfront
