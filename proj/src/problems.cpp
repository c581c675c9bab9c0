#include "mpsolve/problems.hpp"

#include "mpsolve/error.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <stdexcept>

namespace mpsolve {

namespace {

int precision_of(const Vector& x) { return std::max(x.digits(), kMinDigits); }

BigReal num(long v, const Vector& x) { return BigReal(v, precision_of(x)); }

Vector vec(std::initializer_list<BigReal> e) { return Vector(std::vector<BigReal>(e)); }

Vector newton_step(const Problem& p, const Vector& x) {
    return x - lu_solve(lu_factor(p.eval_J(x)), p.eval_F(x));
}

} // namespace

// Holds either a closed-form evaluator or a Newton-refined root. Refinement
// results are kept at the highest precision computed so far.
class RootCache {
public:
    explicit RootCache(RootFn closed_form) : closed_form_(std::move(closed_form)) {}
    explicit RootCache(std::vector<std::string> approx) : approx_(std::move(approx)) {}

    Vector get(const Problem& p, int digits) {
        if (closed_form_) return closed_form_(digits);
        std::lock_guard lock(mutex_);
        if (!cached_ || cached_->digits() < digits) cached_ = refine(p, digits);
        return with_precision(*cached_, digits);
    }

private:
    Vector refine(const Problem& p, int digits) const {
        constexpr int kStart = 40;
        const int work = digits + 10;
        Vector x = cached_ ? *cached_ : Vector::from_decimal(approx_, kStart);
        x = with_precision(x, std::max(kStart, x.digits()));

        if (!cached_) {
            // Polish the stored approximation to ~30 digits before doubling.
            const BigReal tol = pow10(-30, kStart);
            for (int i = 0; i < 60 && !(norm_inf(p.eval_F(x)) < tol); ++i) x = newton_step(p, x);
        }
        std::vector<int> schedule;
        for (int d = work; d > x.digits(); d = d / 2 + 5) schedule.push_back(d);
        std::reverse(schedule.begin(), schedule.end());
        for (int d : schedule) x = newton_step(p, with_precision(x, d));
        const BigReal tol = pow10(20 - work, work);
        x = with_precision(x, work);
        for (int i = 0; i < 4 && !(norm_inf(p.eval_F(x)) < tol); ++i) x = newton_step(p, x);
        if (!(norm_inf(p.eval_F(x)) < tol)) {
            throw Error("root refinement for " + p.id() + " did not converge");
        }
        return x;
    }

    RootFn closed_form_;
    std::vector<std::string> approx_;
    std::mutex mutex_;
    std::optional<Vector> cached_;
};

Problem::Problem(std::string id, int table, std::size_t dimension, SystemFn f, JacobianFn jac,
                 std::vector<InitialPoint> points, std::vector<ConfigOverride> overrides)
    : id_(std::move(id)),
      table_(table),
      m_(dimension),
      f_(std::move(f)),
      jac_(std::move(jac)),
      points_(std::move(points)),
      overrides_(std::move(overrides)) {}

Problem& Problem::with_closed_form_root(RootFn root) {
    root_ = std::make_shared<RootCache>(std::move(root));
    return *this;
}

Problem& Problem::with_bootstrapped_root(std::vector<std::string> approximation) {
    root_ = std::make_shared<RootCache>(std::move(approximation));
    return *this;
}

Vector Problem::eval_F(const Vector& x) const {
    if (x.size() != m_) throw DimensionMismatch(id_ + ": wrong argument dimension");
    return f_(x);
}

Matrix Problem::eval_J(const Vector& x) const {
    if (x.size() != m_) throw DimensionMismatch(id_ + ": wrong argument dimension");
    return jac_(x);
}

Vector Problem::known_root(int digits) const {
    if (!root_) throw Error(id_ + " has no known root");
    return root_->get(*this, digits);
}

Problem& Problem::with_alternate_root(RootFn root) {
    alternates_.push_back(std::move(root));
    return *this;
}

Vector Problem::attracting_root(const Vector& x, int digits) const {
    Vector best = known_root(digits);
    BigReal best_gap = norm_inf(x - best);
    for (const auto& alt : alternates_) {
        Vector r = alt(digits);
        BigReal gap = norm_inf(x - r);
        if (gap < best_gap) {
            best = std::move(r);
            best_gap = std::move(gap);
        }
    }
    return best;
}

const InitialPoint& Problem::point(std::string_view label) const {
    for (const auto& p : points_) {
        if (p.label == label || p.label == "x0_" + std::string(label)) return p;
    }
    throw ParseError(id_ + ": unknown initial point '" + std::string(label) + "'");
}

int Problem::effective_rho(MethodKind m, std::string_view point_label) const {
    const std::string& label = point(point_label).label;
    for (const auto& o : overrides_) {
        if (o.method == m && o.rho && (!o.point || *o.point == label)) return *o.rho;
    }
    return theoretical_rho(m);
}

int Problem::effective_j(MethodKind m, std::string_view point_label) const {
    const std::string& label = point(point_label).label;
    for (const auto& o : overrides_) {
        if (o.method == m && o.j && (!o.point || *o.point == label)) return *o.j;
    }
    return 2;
}

namespace {

Problem make_f1() {
    auto f = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        return vec({exp(x) - 2, sin(2 * y - x)});
    };
    auto jac = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        BigReal c = cos(2 * y - x);
        return Matrix{{exp(x), num(0, v)}, {-c, 2 * c}};
    };
    Problem p("F1", 1, 2, f, jac,
              {{"x0_1", {"1", "0"}, 0.347, 0.841},
               {"x0_2", {"0.6", "0.3"}, 0.0931, 0.178},
               {"x0_3", {"0.7", "0.35"}, 0.00685, 0.0137}},
              {{MethodKind::NM, "x0_1", 4, std::nullopt},
               {MethodKind::NM, "x0_2", 4, std::nullopt},
               {MethodKind::FDN, "x0_3", 8, std::nullopt}});
    p.with_closed_form_root([](int d) {
        BigReal ln2 = log(BigReal(2L, d));
        return vec({ln2, ln2 / 2});
    });
    return p;
}

Problem make_f2() {
    auto f = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        return vec({x * x - 4 * x + y * y, 2 * x + y * y - 2});
    };
    auto jac = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        return Matrix{{2 * x - 4, 2 * y}, {num(2, v), 2 * y}};
    };
    Problem p("F2", 2, 2, f, jac,
              {{"x0_1", {"-1", "0.4"}, 1.354, 5.16},
               {"x0_2", {"0", "1"}, 0.354, 1.0},
               {"x0_3", {"0.3", "1.1"}, 0.0542, 0.19}},
              {{MethodKind::HMN, std::nullopt, 20, 4}, {MethodKind::NM, std::nullopt, 3, std::nullopt}});
    p.with_closed_form_root([](int d) {
        BigReal s7 = sqrt(BigReal(7L, d));
        return vec({3 - s7, sqrt(2 * s7 - 4)});
    });
    p.with_alternate_root([](int d) {
        BigReal s7 = sqrt(BigReal(7L, d));
        return vec({3 - s7, -sqrt(2 * s7 - 4)});
    });
    return p;
}

Problem make_f3() {
    auto f = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        return vec({x * x * x - 3 * x * y * y - 1, 3 * x * x * y - y * y * y + 1});
    };
    auto jac = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        BigReal diag = 3 * x * x - 3 * y * y;
        BigReal off = 6 * x * y;
        return Matrix{{diag, -off}, {off, diag}};
    };
    Problem p("F3", 3, 2, f, jac,
              {{"x0_1", {"-1", "2"}, 0.916, 10.0},
               {"x0_2", {"-0.1", "1.4"}, 0.316, 1.702},
               {"x0_3", {"-0.3", "1.1"}, 0.0158, 0.062}},
              {});
    p.with_closed_form_root([](int d) {
        BigReal s3 = sqrt(BigReal(3L, d));
        BigReal c = cbrt(5 + 3 * s3);
        return vec({c * (s3 / 2 - 1), c / 2});
    });
    return p;
}

Problem make_f4() {
    auto f = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        BigReal ex = exp(x);
        return vec({ex * cos(y) - x, ex * sin(y) - y});
    };
    auto jac = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        BigReal ex = exp(x);
        BigReal c = ex * cos(y);
        BigReal s = ex * sin(y);
        return Matrix{{c - 1, -s}, {s, c - 1}};
    };
    Problem p("F4", 4, 2, f, jac,
              {{"x0_1", {"0", "2"}, 0.6627, 1.091},
               {"x0_2", {"0.2", "1.1"}, 0.2372, 0.354},
               {"x0_3", {"0.3", "1.3"}, 0.03723, 0.0611}},
              {{MethodKind::NM, "x0_2", 3, std::nullopt}, {MethodKind::AMN, "x0_3", 4, std::nullopt}});
    p.with_bootstrapped_root({"0.3181315052", "1.3372357014"});
    return p;
}

Problem make_f5() {
    auto f = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        const BigReal& z = v[2];
        return vec({x * y * z - 1, x + y - z * z, x * x + y * y + z * z - 9});
    };
    auto jac = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        const BigReal& z = v[2];
        BigReal one = num(1, v);
        return Matrix{{y * z, x * z, x * y}, {one, one, -2 * z}, {2 * x, 2 * y, 2 * z}};
    };
    Problem p("F5", 5, 3, f, jac,
              {{"x0_1", {"1.0", "-1.0", "0.1"}, 1.14, 6.99},
               {"x0_2", {"2.0", "-2.0", "0.0"}, 0.224, 1.00},
               {"x0_3", {"2.1", "-2.1", "-0.2"}, 0.0403, 0.14}},
              {});
    p.with_bootstrapped_root({"2.14025812200", "-2.09029464225", "-0.22352512107"});
    return p;
}

Problem make_f6() {
    auto f = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        const BigReal& z = v[2];
        const BigReal& t = v[3];
        return vec({y * z + t * (y + z), x * z + t * (x + z), x * y + t * (x + y),
                    x * y + x * z + y * z - 1});
    };
    auto jac = [](const Vector& v) {
        const BigReal& x = v[0];
        const BigReal& y = v[1];
        const BigReal& z = v[2];
        const BigReal& t = v[3];
        BigReal zero = num(0, v);
        return Matrix{{zero, z + t, y + t, y + z},
                      {z + t, zero, x + t, x + z},
                      {y + t, x + t, zero, x + y},
                      {y + z, x + z, x + y, zero}};
    };
    Problem p("F6", 6, 4, f, jac,
              {{"x0_1", {"0.5", "0.5", "0.5", "0.2"}, 0.4887, 0.45},
               {"x0_2", {"0.55", "0.55", "0.55", "-0.1"}, 0.1887, 0.1925},
               {"x0_3", {"0.6", "0.6", "0.6", "-0.3"}, 0.02265, 0.08}},
              {{MethodKind::NM, std::nullopt, 5, std::nullopt},
               {MethodKind::AMN, std::nullopt, 5, std::nullopt},
               {MethodKind::HMN, std::nullopt, 20, 4}});
    p.with_closed_form_root([](int d) {
        BigReal s3 = sqrt(BigReal(3L, d));
        BigReal a = s3 / 3;
        return vec({a, a, a, -(s3 / 6)});
    });
    return p;
}

Problem make_f7() {
    Problem bvp = build_bvp(10);
    Problem p("F7", 7, 9, [bvp](const Vector& x) { return bvp.eval_F(x); },
              [bvp](const Vector& x) { return bvp.eval_J(x); },
              {{"x0_1", {"1", "0", "-1", "0", "1", "0", "-1", "0", "1"}, 1.7290, 1.990},
               {"x0_2", {"0", "0", "0", ".5", ".5", ".5", "1", "1", "1"}, 0.3165, 0.5012},
               {"x0_3", {"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"}, 0.02933,
                0.007290}},
              {{MethodKind::NM, std::nullopt, 5, std::nullopt}});
    p.with_bootstrapped_root({".105541119905921", ".211070483662496", ".316505813937525",
                              ".421624081569127", ".525992841283953", ".628906344657317",
                              ".729332377591977", ".825878904047790", ".916792309006097"});
    return p;
}

} // namespace

Problem build_bvp(int n) {
    if (n < 3) throw std::invalid_argument("BVP discretization needs n >= 3");
    const std::size_t m = static_cast<std::size_t>(n - 1);
    const long n2 = static_cast<long>(n) * n;
    auto f = [m, n2](const Vector& y) {
        std::vector<BigReal> out;
        out.reserve(m);
        for (std::size_t k = 0; k < m; ++k) {
            BigReal r = 2 * y[k] - y[k] * y[k] * y[k] / n2;
            if (k > 0) r -= y[k - 1];
            if (k + 1 < m) r -= y[k + 1];
            else r = r - 1;  // y_n = 1
            out.push_back(std::move(r));
        }
        return Vector(std::move(out));
    };
    auto jac = [m, n2](const Vector& y) {
        Matrix a(m, precision_of(y));
        for (std::size_t k = 0; k < m; ++k) {
            a(k, k) = 2 - 3 * y[k] * y[k] / n2;
            if (k > 0) a(k, k - 1) = num(-1, y);
            if (k + 1 < m) a(k, k + 1) = num(-1, y);
        }
        return a;
    };
    Problem p("BVP" + std::to_string(n), 0, m, f, jac, {}, {});
    std::vector<std::string> ramp;
    for (int k = 1; k < n; ++k) ramp.push_back(std::to_string(static_cast<double>(k) / n));
    p.with_bootstrapped_root(std::move(ramp));
    return p;
}

const std::vector<Problem>& registry() {
    static const std::vector<Problem> problems = {make_f1(), make_f2(), make_f3(), make_f4(),
                                                  make_f5(), make_f6(), make_f7()};
    return problems;
}

const Problem& find_problem(std::string_view id) {
    std::string key(id);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (const auto& p : registry()) {
        if (p.id() == key || std::to_string(p.table()) == key) return p;
    }
    throw ParseError("unknown problem '" + std::string(id) + "'");
}

} // namespace mpsolve
