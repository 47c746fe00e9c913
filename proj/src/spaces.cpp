#include "degwave/spaces.hpp"

#include "degwave/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace degwave {

std::string_view to_string(Regime regime) {
    return regime == Regime::WDC ? "WDC" : "SDC";
}

Degeneracy::Degeneracy(double alpha) : alpha_(alpha), regime_(Regime::WDC) {
    if (!(alpha > 0.0 && alpha < 2.0)) {
        std::ostringstream msg;
        msg << "degeneracy exponent alpha must lie in (0,2), got " << alpha;
        throw DomainError(msg.str());
    }
    regime_ = alpha < 1.0 ? Regime::WDC : Regime::SDC;
}

double cell_weight_integral(double x_lo, double x_hi, double alpha) {
    if (!(x_lo >= 0.0 && x_lo < x_hi && x_hi <= 1.0)) {
        std::ostringstream msg;
        msg << "cell_weight_integral: need 0 <= lo < hi <= 1, got [" << x_lo << ", " << x_hi << "]";
        throw DomainError(msg.str());
    }
    if (!(alpha > 0.0 && alpha < 2.0)) {
        throw DomainError("cell_weight_integral: alpha must lie in (0,2)");
    }
    const double p = alpha + 1.0;
    return (std::pow(x_hi, p) - std::pow(x_lo, p)) / p;
}

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(std::vector<double> nodes, Degeneracy degeneracy)
    : nodes_(std::move(nodes)), degeneracy_(degeneracy) {
    if (nodes_.size() < 2) {
        throw DomainError("grid needs at least one cell");
    }
    if (nodes_.front() != 0.0 || nodes_.back() != 1.0) {
        throw DomainError("grid must start at 0 and end at 1");
    }
    weights_.resize(nodes_.size() - 1);
    h_min_ = 1.0;
    h_max_ = 0.0;
    for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
        if (!(nodes_[i + 1] > nodes_[i])) {
            throw DomainError("grid nodes must be strictly increasing");
        }
        weights_[i] = cell_weight_integral(nodes_[i], nodes_[i + 1], degeneracy_.alpha());
        h_min_ = std::min(h_min_, nodes_[i + 1] - nodes_[i]);
        h_max_ = std::max(h_max_, nodes_[i + 1] - nodes_[i]);
    }
}

GridPtr Grid::uniform(std::size_t cells, Degeneracy degeneracy) {
    if (cells == 0) {
        throw DomainError("grid needs at least one cell");
    }
    std::vector<double> nodes(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        nodes[i] = static_cast<double>(i) / static_cast<double>(cells);
    }
    nodes.back() = 1.0;
    return std::make_shared<const Grid>(std::move(nodes), degeneracy);
}

GridPtr Grid::graded(std::size_t cells, Degeneracy degeneracy, double ratio) {
    if (!(ratio > 1.0)) {
        return uniform(cells, degeneracy);
    }
    if (cells == 0) {
        throw DomainError("grid needs at least one cell");
    }
    std::vector<double> nodes(cells + 1);
    const double total = std::pow(ratio, static_cast<double>(cells)) - 1.0;
    for (std::size_t i = 0; i <= cells; ++i) {
        nodes[i] = (std::pow(ratio, static_cast<double>(i)) - 1.0) / total;
    }
    nodes.front() = 0.0;
    nodes.back() = 1.0;
    return std::make_shared<const Grid>(std::move(nodes), degeneracy);
}

std::size_t Grid::locate(double x) const {
    if (x <= 0.0) {
        return 0;
    }
    if (x >= 1.0) {
        return cells() - 1;
    }
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

std::size_t Grid::cells_overlapping(double lo, double hi) const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < cells(); ++i) {
        const double a = std::max(lo, nodes_[i]);
        const double b = std::min(hi, nodes_[i + 1]);
        if (b > a) {
            ++count;
        }
    }
    return count;
}

// ---------------------------------------------------------------------------
// SpaceField

SpaceField::SpaceField(GridPtr grid, std::vector<double> values, BoundaryTags tags)
    : grid_(std::move(grid)), values_(std::move(values)), tags_(tags) {
    if (!grid_) {
        throw ArgumentError("SpaceField requires a grid");
    }
    if (values_.size() != grid_->size()) {
        throw ArgumentError("SpaceField: value count does not match grid size");
    }
}

SpaceField SpaceField::zeros(GridPtr grid, BoundaryTags tags) {
    const std::size_t n = grid->size();
    return SpaceField(std::move(grid), std::vector<double>(n, 0.0), tags);
}

SpaceField SpaceField::interpolate(GridPtr grid, const std::function<double(double)>& fn,
                                   BoundaryTags tags) {
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = fn(grid->node(i));
    }
    if (tags.left) {
        values.front() = 0.0;
    }
    if (tags.right) {
        values.back() = 0.0;
    }
    return SpaceField(std::move(grid), std::move(values), tags);
}

double SpaceField::operator()(double x) const {
    const std::size_t c = grid_->locate(x);
    const double x0 = grid_->node(c);
    return values_[c] + slope(c) * (x - x0);
}

double SpaceField::slope(std::size_t cell) const {
    return (values_[cell + 1] - values_[cell]) / grid_->width(cell);
}

bool SpaceField::satisfies_tags(double tol) const {
    if (tags_.left && std::abs(values_.front()) > tol) {
        return false;
    }
    if (tags_.right && std::abs(values_.back()) > tol) {
        return false;
    }
    return true;
}

SpaceField SpaceField::scaled(double c) const {
    std::vector<double> out(values_);
    for (double& v : out) {
        v *= c;
    }
    return SpaceField(grid_, std::move(out), tags_);
}

SpaceField operator-(const SpaceField& a, const SpaceField& b) {
    if (a.grid_ptr() != b.grid_ptr()) {
        throw ArgumentError("field difference requires a shared grid");
    }
    std::vector<double> out(a.values().begin(), a.values().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] -= b[i];
    }
    return SpaceField(a.grid_ptr(), std::move(out), a.tags());
}

SpaceField operator+(const SpaceField& a, const SpaceField& b) {
    if (a.grid_ptr() != b.grid_ptr()) {
        throw ArgumentError("field sum requires a shared grid");
    }
    std::vector<double> out(a.values().begin(), a.values().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += b[i];
    }
    return SpaceField(a.grid_ptr(), std::move(out), a.tags());
}

// ---------------------------------------------------------------------------
// SpaceTimeField

SpaceTimeField::SpaceTimeField(GridPtr grid, std::vector<double> times)
    : grid_(std::move(grid)), times_(std::move(times)) {
    data_.assign(times_.size() * grid_->size(), 0.0);
}

SpaceTimeField::SpaceTimeField(GridPtr grid, std::vector<double> times, std::vector<double> flat)
    : grid_(std::move(grid)), times_(std::move(times)), data_(std::move(flat)) {
    if (data_.size() != times_.size() * grid_->size()) {
        throw ArgumentError("SpaceTimeField: data size does not match levels x nodes");
    }
}

SpaceTimeField SpaceTimeField::sample(GridPtr grid, std::vector<double> times,
                                      const std::function<double(double, double)>& fn) {
    SpaceTimeField out(std::move(grid), std::move(times));
    for (std::size_t k = 0; k < out.levels(); ++k) {
        auto lvl = out.level(k);
        const double t = out.times_[k];
        for (std::size_t i = 0; i < lvl.size(); ++i) {
            lvl[i] = fn(t, out.grid_->node(i));
        }
    }
    return out;
}

std::span<const double> SpaceTimeField::level(std::size_t k) const {
    const std::size_t n = grid_->size();
    return std::span<const double>(data_).subspan(k * n, n);
}

std::span<double> SpaceTimeField::level(std::size_t k) {
    const std::size_t n = grid_->size();
    return std::span<double>(data_).subspan(k * n, n);
}

SpaceField SpaceTimeField::slice(std::size_t k, BoundaryTags tags) const {
    auto lvl = level(k);
    return SpaceField(grid_, std::vector<double>(lvl.begin(), lvl.end()), tags);
}

// ---------------------------------------------------------------------------
// Integrals

double trapezoid(std::span<const double> times, std::span<const double> samples) {
    if (times.size() != samples.size()) {
        throw ArgumentError("trapezoid: size mismatch");
    }
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        acc += 0.5 * (times[k + 1] - times[k]) * (samples[k] + samples[k + 1]);
    }
    return acc;
}

double TimeSeries::l2_squared() const {
    std::vector<double> sq(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        sq[k] = values[k] * values[k];
    }
    return trapezoid(times, sq);
}

namespace {

template <class Fn>
double accumulate_cells(const Grid& grid, double lo, double hi, Fn&& per_piece) {
    if (!(lo < hi)) {
        return 0.0;
    }
    double acc = 0.0;
    const std::size_t first = grid.locate(lo);
    for (std::size_t c = first; c < grid.cells(); ++c) {
        const double a = std::max(lo, grid.node(c));
        const double b = std::min(hi, grid.node(c + 1));
        if (a >= hi) {
            break;
        }
        if (b > a) {
            acc += per_piece(c, a, b);
        }
    }
    return acc;
}

} // namespace

double integrate_square(const Grid& grid, std::span<const double> values, double lo, double hi) {
    return accumulate_cells(grid, lo, hi, [&](std::size_t c, double a, double b) {
        const double x0 = grid.node(c);
        const double s = (values[c + 1] - values[c]) / grid.width(c);
        const double ua = values[c] + s * (a - x0);
        const double ub = values[c] + s * (b - x0);
        return (b - a) * (ua * ua + ua * ub + ub * ub) / 3.0;
    });
}

double integrate_gradient_square(const Grid& grid, std::span<const double> values, double lo,
                                 double hi) {
    return accumulate_cells(grid, lo, hi, [&](std::size_t c, double a, double b) {
        const double s = (values[c + 1] - values[c]) / grid.width(c);
        return s * s * (b - a);
    });
}

double integrate_weighted_gradient_square(const Grid& grid, std::span<const double> values,
                                          double lo, double hi) {
    return accumulate_cells(grid, lo, hi, [&](std::size_t c, double a, double b) {
        const double s = (values[c + 1] - values[c]) / grid.width(c);
        const bool whole = a == grid.node(c) && b == grid.node(c + 1);
        const double w = whole ? grid.cell_weights()[c] : cell_weight_integral(a, b, grid.alpha());
        return s * s * w;
    });
}

double l2_inner(const SpaceField& a, const SpaceField& b) {
    const Grid& grid = a.grid();
    double acc = 0.0;
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        const double h = grid.width(c);
        acc += h / 6.0 * (2.0 * a[c] * b[c] + a[c] * b[c + 1] + a[c + 1] * b[c] + 2.0 * a[c + 1] * b[c + 1]);
    }
    return acc;
}

double l2_norm_squared(const SpaceField& u) {
    return integrate_square(u.grid(), u.values(), 0.0, 1.0);
}

double l2_norm(const SpaceField& u) {
    return std::sqrt(l2_norm_squared(u));
}

double weighted_gradient_squared(const SpaceField& u) {
    const Grid& grid = u.grid();
    double acc = 0.0;
    for (std::size_t c = 0; c < grid.cells(); ++c) {
        const double s = u.slope(c);
        acc += s * s * grid.cell_weights()[c];
    }
    return acc;
}

double h1_alpha_norm(const SpaceField& u) {
    return std::sqrt(l2_norm_squared(u) + weighted_gradient_squared(u));
}

double l1_l2_norm(const SpaceTimeField& f) {
    std::vector<double> per_level(f.levels());
    for (std::size_t k = 0; k < f.levels(); ++k) {
        per_level[k] = std::sqrt(integrate_square(f.grid(), f.level(k), 0.0, 1.0));
    }
    return trapezoid(f.times(), per_level);
}

// ---------------------------------------------------------------------------
// Embedding check

double embedding_constant_A1(double alpha, double a) {
    return std::sqrt(std::max(1.0, 1.0 / std::pow(a, alpha)));
}

double embedding_constant_A2(double alpha, double a) {
    return std::max(1.0 / std::sqrt(1.0 - a), std::sqrt(1.0 - a) / std::pow(a, 0.5 * alpha));
}

bool HolderReport::holds(double rel_tol) const {
    const double bound_1 = constant_A1 * h1_alpha_norm;
    const double bound_2 = constant_A2 * h1_alpha_norm;
    return slack_A1 >= -rel_tol * bound_1 && slack_A2 >= -rel_tol * bound_2;
}

HolderReport holder_embedding_check(const SpaceField& u, double a) {
    if (!(a > 0.0 && a < 1.0)) {
        std::ostringstream msg;
        msg << "holder_embedding_check: a must lie in (0,1), got " << a;
        throw DomainError(msg.str());
    }
    const Grid& grid = u.grid();
    HolderReport rep;
    rep.a = a;

    // Sample points: x = a itself, then every node in (a, 1].
    std::vector<double> xs{a};
    std::vector<double> vs{u(a)};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid.node(i) > a) {
            xs.push_back(grid.node(i));
            vs.push_back(u[i]);
        }
    }
    for (double v : vs) {
        rep.sup_norm = std::max(rep.sup_norm, std::abs(v));
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            const double q = std::abs(vs[j] - vs[i]) / std::sqrt(xs[j] - xs[i]);
            rep.seminorm = std::max(rep.seminorm, q);
        }
    }

    rep.h1_interval_norm = std::sqrt(integrate_square(grid, u.values(), a, 1.0) +
                                     integrate_gradient_square(grid, u.values(), a, 1.0));
    rep.h1_alpha_norm = h1_alpha_norm(u);
    rep.constant_A1 = embedding_constant_A1(grid.alpha(), a);
    rep.constant_A2 = embedding_constant_A2(grid.alpha(), a);
    rep.slack_A1 = rep.constant_A1 * rep.h1_alpha_norm - rep.h1_interval_norm;
    rep.slack_A2 = rep.constant_A2 * rep.h1_alpha_norm - rep.holder_norm();
    return rep;
}

} // namespace degwave
