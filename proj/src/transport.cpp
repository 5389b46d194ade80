#include "phasespace/transport.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace phasespace {

namespace {

struct Cell {
    Index row;
    Index col;
};

class TransportSimplex {
public:
    TransportSimplex(const RVector& a, const RVector& b, const RMatrix& c)
        : m_(a.size()), n_(b.size()), cost_(c), x_(RMatrix::Zero(a.size(), b.size())),
          basic_(static_cast<std::size_t>(a.size() * b.size()), false) {
        northwest_corner(a, b);
    }

    TransportSolution solve() {
        const Real scale = std::max<Real>(1.0, cost_.cwiseAbs().maxCoeff());
        const Real tol = 1e-12 * scale;
        const long max_iterations = 200 * (m_ + n_) * (m_ + n_) + 1000;
        long degenerate_run = 0;
        long it = 0;
        for (; it < max_iterations; ++it) {
            compute_potentials();
            const bool bland = degenerate_run > m_ + n_;
            Index ei = -1, ej = -1;
            Real best = -tol;
            for (Index i = 0; i < m_ && !(bland && ei >= 0); ++i) {
                for (Index j = 0; j < n_; ++j) {
                    if (is_basic(i, j)) continue;
                    const Real r = cost_(i, j) - u_[static_cast<std::size_t>(i)] - v_[static_cast<std::size_t>(j)];
                    if (r < best) {
                        best = r;
                        ei = i;
                        ej = j;
                        if (bland) break;
                    }
                }
            }
            if (ei < 0) break;
            const Real theta = pivot(ei, ej);
            degenerate_run = theta > 0.0 ? 0 : degenerate_run + 1;
        }
        if (it == max_iterations) throw ConvergenceError("transport simplex did not converge", it);

        TransportSolution sol;
        sol.plan = x_;
        sol.cost = (cost_.array() * x_.array()).sum();
        sol.iterations = it;
        return sol;
    }

private:
    bool is_basic(Index i, Index j) const { return basic_[static_cast<std::size_t>(i * n_ + j)]; }
    void set_basic(Index i, Index j, bool on) { basic_[static_cast<std::size_t>(i * n_ + j)] = on; }

    void northwest_corner(const RVector& a, const RVector& b) {
        std::vector<Real> ra(a.data(), a.data() + m_);
        std::vector<Real> rb(b.data(), b.data() + n_);
        Index i = 0, j = 0;
        while (true) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            const Real q = std::max<Real>(0.0, std::min(ra[ui], rb[uj]));
            x_(i, j) = q;
            set_basic(i, j, true);
            cells_.push_back({i, j});
            ra[ui] -= q;
            rb[uj] -= q;
            if (i == m_ - 1 && j == n_ - 1) break;
            if (i == m_ - 1) ++j;
            else if (j == n_ - 1) ++i;
            else if (ra[ui] < rb[uj]) ++i;
            else ++j;
        }
    }

    // Builds adjacency of the basis tree: nodes 0..m-1 are rows, m..m+n-1 columns.
    void build_tree() {
        adjacency_.assign(static_cast<std::size_t>(m_ + n_), {});
        for (std::size_t k = 0; k < cells_.size(); ++k) {
            adjacency_[static_cast<std::size_t>(cells_[k].row)].push_back(k);
            adjacency_[static_cast<std::size_t>(m_ + cells_[k].col)].push_back(k);
        }
    }

    void compute_potentials() {
        build_tree();
        u_.assign(static_cast<std::size_t>(m_), 0.0);
        v_.assign(static_cast<std::size_t>(n_), 0.0);
        std::vector<bool> seen(static_cast<std::size_t>(m_ + n_), false);
        std::vector<Index> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const Index node = stack.back();
            stack.pop_back();
            for (std::size_t k : adjacency_[static_cast<std::size_t>(node)]) {
                const Cell& c = cells_[k];
                const Index other = node < m_ ? m_ + c.col : c.row;
                if (seen[static_cast<std::size_t>(other)]) continue;
                seen[static_cast<std::size_t>(other)] = true;
                if (node < m_) v_[static_cast<std::size_t>(c.col)] = cost_(c.row, c.col) - u_[static_cast<std::size_t>(c.row)];
                else u_[static_cast<std::size_t>(c.row)] = cost_(c.row, c.col) - v_[static_cast<std::size_t>(c.col)];
                stack.push_back(other);
            }
        }
    }

    // Tree path (as cell indices) from row node ei to column node m+ej.
    std::vector<std::size_t> tree_path(Index ei, Index ej) const {
        const auto nodes = static_cast<std::size_t>(m_ + n_);
        std::vector<long> via(nodes, -1);
        std::vector<Index> parent(nodes, -1);
        std::vector<bool> seen(nodes, false);
        std::vector<Index> queue{ei};
        seen[static_cast<std::size_t>(ei)] = true;
        const Index target = m_ + ej;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Index node = queue[head];
            if (node == target) break;
            for (std::size_t k : adjacency_[static_cast<std::size_t>(node)]) {
                const Cell& c = cells_[k];
                const Index other = node < m_ ? m_ + c.col : c.row;
                if (seen[static_cast<std::size_t>(other)]) continue;
                seen[static_cast<std::size_t>(other)] = true;
                parent[static_cast<std::size_t>(other)] = node;
                via[static_cast<std::size_t>(other)] = static_cast<long>(k);
                queue.push_back(other);
            }
        }
        std::vector<std::size_t> path;
        for (Index node = target; node != ei; node = parent[static_cast<std::size_t>(node)]) {
            if (node < 0) throw std::logic_error("transport basis is not a spanning tree");
            path.push_back(static_cast<std::size_t>(via[static_cast<std::size_t>(node)]));
        }
        std::reverse(path.begin(), path.end());
        return path;
    }

    Real pivot(Index ei, Index ej) {
        const auto path = tree_path(ei, ej);
        // Edges along the path from the entering row alternate -, +, -, ..., -.
        Real theta = kInfinity;
        std::size_t leave = path.size();
        for (std::size_t e = 0; e < path.size(); e += 2) {
            const Cell& c = cells_[path[e]];
            const Real v = x_(c.row, c.col);
            if (v < theta) {
                theta = v;
                leave = e;
            }
        }
        theta = std::max<Real>(0.0, theta);
        for (std::size_t e = 0; e < path.size(); ++e) {
            const Cell& c = cells_[path[e]];
            x_(c.row, c.col) += (e % 2 == 0 ? -theta : theta);
            if (x_(c.row, c.col) < 0.0) x_(c.row, c.col) = 0.0;
        }
        x_(ei, ej) = theta;
        const std::size_t leaving_cell = path[leave];
        const Cell old = cells_[leaving_cell];
        x_(old.row, old.col) = 0.0;
        set_basic(old.row, old.col, false);
        set_basic(ei, ej, true);
        cells_[leaving_cell] = {ei, ej};
        return theta;
    }

    Index m_, n_;
    const RMatrix& cost_;
    RMatrix x_;
    std::vector<bool> basic_;
    std::vector<Cell> cells_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<Real> u_, v_;
};

void check_marginals(const RVector& supply, const RVector& demand, const RMatrix& cost) {
    if (supply.size() == 0 || demand.size() == 0) throw std::invalid_argument("transport needs nonempty marginals");
    if (cost.rows() != supply.size() || cost.cols() != demand.size()) throw std::invalid_argument("cost matrix shape mismatch");
    if (supply.minCoeff() < 0.0 || demand.minCoeff() < 0.0) throw std::invalid_argument("negative transport mass");
    const Real sa = supply.sum(), sb = demand.sum();
    if (!(sa > 0.0) || std::abs(sa - sb) > 1e-9 * std::max(sa, sb))
        throw std::invalid_argument("transport marginals have different totals");
}

} // namespace

TransportSolution solve_transport(const RVector& supply, const RVector& demand, const RMatrix& cost) {
    check_marginals(supply, demand, cost);
    const RVector b = demand * (supply.sum() / demand.sum());
    TransportSimplex simplex(supply, b, cost);
    return simplex.solve();
}

Real bottleneck_transport(const RVector& supply, const RVector& demand, const RMatrix& distance) {
    check_marginals(supply, demand, distance);
    std::vector<Real> levels(distance.data(), distance.data() + distance.size());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    const Real total = supply.sum();
    auto feasible = [&](Real tau) {
        const RMatrix penalty = (distance.array() > tau).cast<Real>().matrix();
        return solve_transport(supply, demand, penalty).cost <= 1e-12 * total;
    };
    std::size_t lo = 0, hi = levels.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (feasible(levels[mid])) hi = mid;
        else lo = mid + 1;
    }
    return levels[lo];
}

} // namespace phasespace
