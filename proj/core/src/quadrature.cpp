// SPDX-License-Identifier: Apache-2.0
#include "cellcov/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cellcov/errors.hpp"

namespace cellcov {

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1]. Nodes are symmetric;
// only the nonnegative half is stored. g7 weights are zero at the
// Kronrod-only nodes.
constexpr int kHalfNodes = 8;
constexpr double kNode[kHalfNodes] = {
    0.000000000000000000000000000000000, 0.207784955007898467600689403773245,
    0.405845151377397166906606412076961, 0.586087235467691130294144838258730,
    0.741531185599394439863864773280788, 0.864864423359769072789712788640926,
    0.949107912342758524526189684047851, 0.991455371120812639206854697526329};
constexpr double kWk[kHalfNodes] = {
    0.209482141084727828012999174891714, 0.204432940075298892414161999234649,
    0.190350578064785409913256402421014, 0.169004726639267902826583426598550,
    0.140653259715525918745189590510238, 0.104790010322250183839876322541518,
    0.063092092629978553290700663189204, 0.022935322010529224963732008058970};
constexpr double kWg[kHalfNodes] = {
    0.417959183673469387755102040816327, 0.0,
    0.381830050505118944950369775488975, 0.0,
    0.279705391489276667901467771423780, 0.0,
    0.129484966168869693270611432679082, 0.0};

struct panel {
    double a, b;
    double estimate;
    double err;
};

struct vec_panel {
    double a, b;
    std::vector<double> estimate;
    std::vector<double> err;
    double priority = 0.0;
};

// One K15 pass; returns the Kronrod estimate, the QUADPACK-style error
// bound in *err.
double gk15(const std::function<double(double)>& f, double a, double b, double* err) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fk[2 * kHalfNodes - 1];
    fk[0] = f(mid);
    double k15 = kWk[0] * fk[0];
    double g7 = kWg[0] * fk[0];
    double resabs = kWk[0] * std::abs(fk[0]);
    for (int i = 1; i < kHalfNodes; ++i) {
        const double dx = half * kNode[i];
        const double fl = f(mid - dx);
        const double fr = f(mid + dx);
        fk[2 * i - 1] = fl;
        fk[2 * i] = fr;
        k15 += kWk[i] * (fl + fr);
        g7 += kWg[i] * (fl + fr);
        resabs += kWk[i] * (std::abs(fl) + std::abs(fr));
    }
    const double mean = 0.5 * k15;
    double resasc = kWk[0] * std::abs(fk[0] - mean);
    for (int i = 1; i < kHalfNodes; ++i)
        resasc += kWk[i] * (std::abs(fk[2 * i - 1] - mean) + std::abs(fk[2 * i] - mean));

    k15 *= half;
    g7 *= half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);

    double e = std::abs(k15 - g7);
    if (resasc != 0.0 && e != 0.0)
        e = resasc * std::min(1.0, std::pow(200.0 * e / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) e = std::max(e, 50.0 * eps * resabs);
    *err = e;
    return k15;
}

// Semi-infinite fold: x = a + u/(1-u) maps (0,1) onto (a, inf).
std::function<double(double)> fold_tail(std::function<double(double)> f, double a) {
    return [f = std::move(f), a](double u) {
        const double inv = 1.0 / (1.0 - u);
        return f(a + u * inv) * inv * inv;
    };
}

}  // namespace

void quadrature_spec::validate() const {
    if (!(rel_tol > 0.0)) throw domain_error("quadrature_spec: rel_tol must be > 0");
    if (!(abs_tol >= 0.0)) throw domain_error("quadrature_spec: abs_tol must be >= 0");
    if (max_subdivisions < 1) throw domain_error("quadrature_spec: max_subdivisions must be >= 1");
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const quadrature_spec& spec) {
    spec.validate();
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw domain_error("integrate: requires a < b");
    }

    std::function<double(double)> g;
    double lo = a, hi = b;
    if (std::isinf(b)) {
        g = fold_tail(f, a);
        lo = 0.0;
        hi = 1.0;
    } else {
        g = f;
    }

    std::vector<panel> heap;
    auto by_err = [](const panel& x, const panel& y) { return x.err < y.err; };

    panel root{lo, hi, 0.0, 0.0};
    root.estimate = gk15(g, lo, hi, &root.err);
    heap.push_back(root);

    double total = root.estimate;
    double total_err = root.err;

    for (int used = 1; used < spec.max_subdivisions; ++used) {
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;

        std::pop_heap(heap.begin(), heap.end(), by_err);
        panel worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // Panel narrower than representable; accept its contribution.
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), by_err);
            break;
        }

        panel left{worst.a, mid, 0.0, 0.0};
        panel right{mid, worst.b, 0.0, 0.0};
        left.estimate = gk15(g, left.a, left.b, &left.err);
        right.estimate = gk15(g, right.a, right.b, &right.err);

        total += left.estimate + right.estimate - worst.estimate;
        total_err += left.err + right.err - worst.err;

        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_err);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_err);
    }

    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) return total;
    throw accuracy_error("integrate: subdivision budget exhausted before convergence", total,
                         total_err);
}

namespace detail {

std::vector<double> integrate_vec(const std::function<void(double, std::span<double>)>& f, int dim,
                                  double a, double b, const quadrature_spec& spec) {
    spec.validate();
    if (dim < 1) throw domain_error("integrate_vec: dim must be >= 1");
    if (!(a < b)) {
        if (a == b) return std::vector<double>(dim, 0.0);
        throw domain_error("integrate_vec: requires a < b");
    }

    std::function<void(double, std::span<double>)> g;
    double lo = a, hi = b;
    if (std::isinf(b)) {
        g = [&f, a](double u, std::span<double> out) {
            const double inv = 1.0 / (1.0 - u);
            f(a + u * inv, out);
            for (double& v : out) v *= inv * inv;
        };
        lo = 0.0;
        hi = 1.0;
    } else {
        g = f;
    }

    const double eps = std::numeric_limits<double>::epsilon();
    auto eval = [&](vec_panel& p) {
        const double mid = 0.5 * (p.a + p.b);
        const double half = 0.5 * (p.b - p.a);
        std::vector<double> buf(dim), k15(dim, 0.0), g7(dim, 0.0), resasc(dim, 0.0);
        std::vector<double> centre(dim);
        std::vector<double> nodes((2 * kHalfNodes - 1) * (size_t)dim);

        g(mid, std::span<double>(buf));
        centre = buf;
        for (int c = 0; c < dim; ++c) {
            nodes[c] = buf[c];
            k15[c] = kWk[0] * buf[c];
            g7[c] = kWg[0] * buf[c];
        }
        for (int i = 1; i < kHalfNodes; ++i) {
            const double dx = half * kNode[i];
            g(mid - dx, std::span<double>(buf));
            for (int c = 0; c < dim; ++c) {
                nodes[(2 * i - 1) * (size_t)dim + c] = buf[c];
                k15[c] += kWk[i] * buf[c];
                g7[c] += kWg[i] * buf[c];
            }
            g(mid + dx, std::span<double>(buf));
            for (int c = 0; c < dim; ++c) {
                nodes[(2 * i) * (size_t)dim + c] = buf[c];
                k15[c] += kWk[i] * buf[c];
                g7[c] += kWg[i] * buf[c];
            }
        }
        p.estimate.assign(dim, 0.0);
        p.err.assign(dim, 0.0);
        for (int c = 0; c < dim; ++c) {
            const double mean = 0.5 * k15[c];
            double asc = kWk[0] * std::abs(nodes[c] - mean);
            for (int i = 1; i < kHalfNodes; ++i)
                asc += kWk[i] * (std::abs(nodes[(2 * i - 1) * (size_t)dim + c] - mean) +
                                 std::abs(nodes[(2 * i) * (size_t)dim + c] - mean));
            asc *= std::abs(half);
            double e = std::abs(half) * std::abs(k15[c] - g7[c]);
            if (asc != 0.0 && e != 0.0) e = asc * std::min(1.0, std::pow(200.0 * e / asc, 1.5));
            p.estimate[c] = k15[c] * half;
            p.err[c] = e;
        }
    };

    vec_panel root{lo, hi, {}, {}, 0.0};
    eval(root);

    std::vector<double> total = root.estimate;
    std::vector<double> total_err = root.err;
    // Fixed per-component scales so heap priorities stay comparable.
    std::vector<double> scale(dim);
    for (int c = 0; c < dim; ++c) scale[c] = std::abs(total[c]) + spec.abs_tol + eps;

    auto set_priority = [&](vec_panel& p) {
        double pr = 0.0;
        for (int c = 0; c < dim; ++c) pr = std::max(pr, p.err[c] / scale[c]);
        p.priority = pr;
    };
    set_priority(root);

    auto by_pri = [](const vec_panel& x, const vec_panel& y) { return x.priority < y.priority; };
    std::vector<vec_panel> heap;
    heap.push_back(std::move(root));

    auto converged = [&]() {
        for (int c = 0; c < dim; ++c)
            if (total_err[c] > std::max(spec.abs_tol, spec.rel_tol * std::abs(total[c])))
                return false;
        return true;
    };

    for (int used = 1; used < spec.max_subdivisions; ++used) {
        if (converged()) return total;

        std::pop_heap(heap.begin(), heap.end(), by_pri);
        vec_panel worst = std::move(heap.back());
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            heap.push_back(std::move(worst));
            std::push_heap(heap.begin(), heap.end(), by_pri);
            break;
        }

        vec_panel left{worst.a, mid, {}, {}, 0.0};
        vec_panel right{mid, worst.b, {}, {}, 0.0};
        eval(left);
        eval(right);
        set_priority(left);
        set_priority(right);

        for (int c = 0; c < dim; ++c) {
            total[c] += left.estimate[c] + right.estimate[c] - worst.estimate[c];
            total_err[c] += left.err[c] + right.err[c] - worst.err[c];
        }

        heap.push_back(std::move(left));
        std::push_heap(heap.begin(), heap.end(), by_pri);
        heap.push_back(std::move(right));
        std::push_heap(heap.begin(), heap.end(), by_pri);
    }

    if (converged()) return total;
    double worst_est = 0.0, worst_err = 0.0;
    for (int c = 0; c < dim; ++c) {
        if (total_err[c] > worst_err) {
            worst_err = total_err[c];
            worst_est = total[c];
        }
    }
    throw accuracy_error("integrate_vec: subdivision budget exhausted before convergence",
                         worst_est, worst_err);
}

}  // namespace detail

}  // namespace cellcov
