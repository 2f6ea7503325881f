#include "xibasin/verify.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>

namespace xibasin {

Real xi_critical(const Real& t, const PrecisionContext& ctx)
{
    const BigComplex s(Real::parse("0.5", ctx), t.with_precision(ctx.bits()));
    const BigComplex v = xi(s, ctx);
    if (abs(v.im()) > Real::pow10(-(ctx.digits() / 2), ctx.bits()))
        throw Error("precision breach");
    return v.re();
}

namespace {

int sign_of(const Real& v)
{
    return v.sign() < 0 ? -1 : 1;
}

} // namespace

SignScan sign_scan(const Real& t_lo, const Real& t_hi, const Real& step, const PrecisionContext& ctx)
{
    if (!(step > 0.0))
        throw Error("sign scan step must be positive");
    if (t_hi < t_lo)
        throw Error("sign scan needs t_lo <= t_hi");
    SignScan scan{t_lo, t_hi, step, {}};
    Real a = t_lo.with_precision(ctx.bits());
    int sa = sign_of(xi_critical(a, ctx));
    for (long k = 1; a < t_hi; ++k) {
        Real b = min(t_lo + step * k, t_hi).with_precision(ctx.bits());
        const int sb = sign_of(xi_critical(b, ctx));
        if (sa != sb)
            scan.brackets.emplace_back(a, b);
        a = std::move(b);
        sa = sb;
    }
    return scan;
}

std::pair<Real, Real> refine_bracket(const std::pair<Real, Real>& bracket, const Real& width,
                                     const PrecisionContext& ctx)
{
    Real a = bracket.first.with_precision(ctx.bits());
    Real b = bracket.second.with_precision(ctx.bits());
    int sa = sign_of(xi_critical(a, ctx));
    if (sa == sign_of(xi_critical(b, ctx)))
        throw Error("interval does not bracket a sign change");
    while (b - a > width) {
        Real m = (a + b) / 2L;
        const int sm = sign_of(xi_critical(m, ctx));
        if (sm == sa)
            a = std::move(m);
        else
            b = std::move(m);
    }
    return {std::move(a), std::move(b)};
}

bool verify_root_near(const BigComplex& z, const Real& radius, const PrecisionContext& ctx)
{
    if (!(radius > 0.0))
        throw Error("verify radius must be positive");
    const Real r = radius.with_precision(ctx.bits());
    const Real t = z.im().with_precision(ctx.bits());
    return !sign_scan(t - r, t + r, r / 4L, ctx).brackets.empty();
}

// ---------------------------------------------------------------------------
// Argument principle

namespace {

class BoundaryWalker
{
  public:
    explicit BoundaryWalker(const FunctionHandle& h) : h_(h), half_pi_(Real::pi(h.context().bits()) / 2L) {}

    BigComplex value(const BigComplex& z)
    {
        ++evaluations_;
        BigComplex g = h_.value(z);
        if (g.is_infinite())
            throw Error("boundary proximity");
        const Real m = abs(g);
        if (m.is_zero())
            throw Error("boundary proximity");
        if (!seen_ || m < min_)
            min_ = m;
        if (!seen_ || m > max_)
            max_ = m;
        seen_ = true;
        return g;
    }

    /// Argument change of g from a to b.
    Real segment(const BigComplex& a, const BigComplex& ga, const BigComplex& b, const BigComplex& gb, int depth)
    {
        const BigComplex mid = (a + b) / 2L;
        const BigComplex gm = value(mid);
        Real d1 = arg(gm * conj(ga));
        Real d2 = arg(gb * conj(gm));
        const Real whole = arg(gb * conj(ga));
        const bool small = abs(d1) < half_pi_ && abs(d2) < half_pi_;
        if (small && abs(d1 + d2 - whole) < 1e-6) {
            note_distance(a, ga, mid, gm);
            note_distance(mid, gm, b, gb);
            return d1 + d2;
        }
        if (depth >= kMaxDepth)
            throw Error("boundary proximity");
        return segment(a, ga, mid, gm, depth + 1) + segment(mid, gm, b, gb, depth + 1);
    }

    int evaluations() const { return evaluations_; }
    /// Smallest Newton-distance estimate |g| / |dg/dz| seen on accepted boundary pieces.
    const Real& nearest_zero_estimate() const { return nearest_; }
    const Real& min_modulus() const { return min_; }
    const Real& max_modulus() const { return max_; }

  private:
    void note_distance(const BigComplex& a, const BigComplex& ga, const BigComplex& b, const BigComplex& gb)
    {
        const Real slope = abs(gb - ga);
        if (slope.is_zero())
            return;
        Real d = min(abs(ga), abs(gb)) * abs(b - a) / slope;
        if (nearest_.is_inf() || d < nearest_)
            nearest_ = std::move(d);
    }

    static constexpr int kMaxDepth = 40;
    const FunctionHandle& h_;
    Real half_pi_;
    Real min_;
    Real max_;
    Real nearest_ = Real::infinity(64);
    bool seen_ = false;
    int evaluations_ = 0;
};

} // namespace

ZeroCount count_zeros_rect(const FunctionHandle& h, const Rect& r)
{
    // A zero this close to an edge cannot be placed inside or outside reliably.
    const double kZeroDistanceFloor = 1e-6;
    const PrecisionContext& ctx = h.context();
    const mpfr_prec_t bits = ctx.bits();
    if (!(r.x_lo < r.x_hi) || !(r.y_lo < r.y_hi))
        throw Error("rectangle must have positive extent");
    const BigComplex corners[4] = {
        {r.x_lo.with_precision(bits), r.y_lo.with_precision(bits)},
        {r.x_hi.with_precision(bits), r.y_lo.with_precision(bits)},
        {r.x_hi.with_precision(bits), r.y_hi.with_precision(bits)},
        {r.x_lo.with_precision(bits), r.y_hi.with_precision(bits)},
    };
    constexpr int kInitialPieces = 8;
    BoundaryWalker walker(h);
    Real total(bits);
    const BigComplex g_start = walker.value(corners[0]);
    BigComplex a = corners[0];
    BigComplex ga = g_start;
    for (int e = 0; e < 4; ++e) {
        const BigComplex& from = corners[e];
        const BigComplex& to = corners[(e + 1) % 4];
        for (int k = 1; k <= kInitialPieces; ++k) {
            BigComplex b = (k == kInitialPieces) ? to : from + (to - from) * static_cast<long>(k) / static_cast<long>(kInitialPieces);
            BigComplex gb = (e == 3 && k == kInitialPieces) ? g_start : walker.value(b);
            total += walker.segment(a, ga, b, gb, 0);
            a = std::move(b);
            ga = std::move(gb);
        }
    }
    const Real floor = walker.max_modulus() * Real::pow10(-(ctx.digits() / 2), bits);
    if (walker.min_modulus() < floor || walker.nearest_zero_estimate() < kZeroDistanceFloor)
        throw Error("boundary proximity");
    const double winding = (total / (Real::pi(bits) * 2L)).to_double();
    const double nearest = std::round(winding);
    ZeroCount out{static_cast<int>(nearest), std::abs(winding - nearest), walker.evaluations()};
    if (out.residual >= 0.1)
        throw Error("boundary proximity");
    return out;
}

// ---------------------------------------------------------------------------
// Seed scan

namespace {

class SeedScanner
{
  public:
    SeedScanner(const FunctionHandle& h, const BNQNParams& p, const SeedScanOptions& opts)
      : h_(h), p_(p), opts_(opts), bits_(h.context().bits())
    {
    }

    Real base_y(int j) const
    {
        return opts_.height.with_precision(bits_) + Real(static_cast<long>(j), bits_) / static_cast<long>(opts_.divisions);
    }

    void add_base(int j_lo, int j_hi)
    {
        for (int j = j_lo; j <= j_hi; ++j)
            if (!base_.contains(j))
                base_.emplace(j, run(base_y(j), false));
    }

    /// Inserts interior seeds between consecutive base seeds whose limits differ.
    void refine()
    {
        for (auto it = base_.begin(); it != base_.end(); ++it) {
            auto next = std::next(it);
            if (next == base_.end())
                break;
            if (next->first != it->first + 1 || refined_.contains(it->first))
                continue;
            if (same_limit(it->second, next->second))
                continue;
            refined_.emplace(it->first, std::vector<SeedRun>{});
            auto& inner = refined_[it->first];
            const Real y0 = base_y(it->first);
            const long denom = static_cast<long>(opts_.divisions) * opts_.refinement;
            for (int k = 1; k < opts_.refinement; ++k)
                inner.push_back(run(y0 + Real(static_cast<long>(k), bits_) / denom, true));
        }
    }

    int found_in(const Rect& r) const
    {
        int n = 0;
        for (const auto& z : roots_)
            if (inside(z, r))
                ++n;
        return n;
    }

    static bool inside(const BigComplex& z, const Rect& r)
    {
        return z.re() >= r.x_lo && z.re() <= r.x_hi && z.im() >= r.y_lo && z.im() <= r.y_hi;
    }

    SeedScanReport report(const Rect& r, const ZeroCount& count)
    {
        // Renumber roots by ordinate.
        std::vector<int> order(roots_.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return roots_[a].im() < roots_[b].im(); });
        std::vector<int> rank(order.size());
        for (std::size_t i = 0; i < order.size(); ++i)
            rank[order[i]] = static_cast<int>(i);

        SeedScanReport out;
        for (int i : order)
            out.roots.push_back(roots_[i]);
        auto push = [&](SeedRun s) {
            if (s.root >= 0)
                s.root = rank[s.root];
            out.runs.push_back(std::move(s));
        };
        for (const auto& [j, s] : base_) {
            push(s);
            if (auto it = refined_.find(j); it != refined_.end())
                for (const auto& inner : it->second)
                    push(inner);
        }
        const Real radius = Real::parse("1e-6", h_.context());
        for (const auto& z : out.roots) {
            out.verified.push_back(verify_root_near(z, radius, h_.context()));
            out.in_window.push_back(inside(z, r));
        }
        out.found_in_window = found_in(r);
        out.counted = count.count;
        out.count_residual = count.residual;
        return out;
    }

  private:
    SeedRun run(Real y0, bool refined)
    {
        SeedRun s;
        s.y0 = y0;
        s.refined = refined;
        try {
            const Trajectory t = bnqn_run(h_, BigComplex(Real(bits_), std::move(y0)), p_);
            s.terminal = t.terminal;
            s.outcome = t.outcome;
            s.iterations = t.iterations();
            if (t.outcome == Outcome::ConvergedRoot)
                s.root = root_id(t.terminal);
        } catch (const Error&) {
            s.terminal = BigComplex(Real(bits_), s.y0);
            s.outcome = Outcome::Unresolved;
        }
        return s;
    }

    int root_id(const BigComplex& z)
    {
        for (std::size_t i = 0; i < roots_.size(); ++i)
            if (abs(roots_[i] - z) <= p_.root_tol)
                return static_cast<int>(i);
        roots_.push_back(z);
        return static_cast<int>(roots_.size()) - 1;
    }

    static bool same_limit(const SeedRun& a, const SeedRun& b)
    {
        return a.root == b.root && (a.root >= 0 || a.outcome == b.outcome);
    }

    const FunctionHandle& h_;
    const BNQNParams& p_;
    const SeedScanOptions& opts_;
    mpfr_prec_t bits_;
    std::map<int, SeedRun> base_;
    std::map<int, std::vector<SeedRun>> refined_;
    std::vector<BigComplex> roots_;
};

/// Counts zeros in r, nudging the horizontal edges by fractions of the seed spacing if a zero
/// sits on the boundary.
std::pair<Rect, ZeroCount> count_with_nudge(const FunctionHandle& h, Rect r, const SeedScanOptions& opts)
{
    const mpfr_prec_t bits = h.context().bits();
    const Real spacing = Real(1L, bits) / static_cast<long>(opts.divisions);
    const Rect original = r;
    for (int attempt = 0; attempt < 9; ++attempt) {
        // offsets 0, +1/8, -1/8, +2/8, -2/8, ... of one spacing
        const long k = (attempt + 1) / 2;
        const long sign = attempt % 2 == 1 ? 1 : -1;
        const Real shift = spacing * (sign * k) / 8L;
        r.y_lo = original.y_lo + shift;
        r.y_hi = original.y_hi + shift;
        try {
            return {r, count_zeros_rect(h, r)};
        } catch (const Error& e) {
            if (std::string(e.what()) != "boundary proximity")
                throw;
        }
    }
    throw Error("boundary proximity");
}

} // namespace

SeedScanReport seed_scan(const FunctionHandle& h, const BNQNParams& p, const SeedScanOptions& opts)
{
    if (opts.divisions < 1 || opts.refinement < 2 || opts.max_extension < 0)
        throw Error("seed scan needs divisions >= 1, refinement >= 2, max_extension >= 0");
    if (!(opts.window > 0.0) || !(opts.x_lo < opts.x_hi))
        throw Error("seed scan window must have positive extent");
    p.validate();
    const mpfr_prec_t bits = h.context().bits();
    Rect rect{opts.x_lo.with_precision(bits), opts.x_hi.with_precision(bits), opts.height.with_precision(bits),
              (opts.height + opts.window).with_precision(bits)};
    const auto [nudged, count] = count_with_nudge(h, rect, opts);

    SeedScanner scanner(h, p, opts);
    const int per_window = static_cast<int>(std::ceil((opts.window * static_cast<long>(opts.divisions)).to_double()));
    scanner.add_base(0, per_window);
    scanner.refine();
    for (int ext = 1; ext <= opts.max_extension && scanner.found_in(nudged) < count.count; ++ext) {
        scanner.add_base(-ext * per_window, per_window);
        scanner.add_base(0, (ext + 1) * per_window);
        scanner.refine();
    }
    return scanner.report(nudged, count);
}

void write_seed_scan_csv(std::ostream& out, const SeedScanReport& report, int digits)
{
    out << "y0,refined,term_x,term_y,outcome,iterations,root\n";
    for (const auto& s : report.runs) {
        out << s.y0.to_string(digits) << ',' << (s.refined ? 1 : 0) << ',' << s.terminal.re().to_string(digits) << ','
            << s.terminal.im().to_string(digits) << ',' << to_string(s.outcome) << ',' << s.iterations << ','
            << s.root << '\n';
    }
}

} // namespace xibasin
