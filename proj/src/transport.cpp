#include <algorithm>
#include <cmath>

#include "normspec/errors.hpp"
#include "normspec/spectral.hpp"
#include "normspec/tracking.hpp"

namespace normspec {

namespace {

class GroupProjector {
public:
    GroupProjector(const Curve& c, const std::vector<int>& group, const TransportOptions& opt)
        : c_(c), opt_(opt), group_(group) {}

    void reset(double t0) {
        ref_ = sorted_eigenvalues(c_.value(t0));
        for (int i : group_)
            if (i < 0 || i >= static_cast<int>(ref_.size())) throw InvalidArgument("group index out of range");
    }

    /// Contour for the group at t, following it from the reference row.
    Contour contour_at(double t) const {
        const auto eigs = sorted_eigenvalues(c_.value(t));
        const Assignment a = bottleneck_match(ref_, eigs);
        std::vector<int> g;
        for (int i : group_) g.push_back(a.sigma[i]);
        return group_contour(eigs, g);
    }

    /// Moves the reference row to t so that later matches stay local.
    void advance(double t) {
        const auto eigs = sorted_eigenvalues(c_.value(t));
        const Assignment a = bottleneck_match(ref_, eigs);
        std::vector<Complex> row;
        for (int j : a.sigma) row.push_back(eigs[j]);
        ref_ = row;
    }

    Mat projection(double t, const Contour& g) const {
        try {
            return contour_projection(c_.value(t), g, opt_.projection).P;
        } catch (const ContourHitsSpectrum& e) {
            throw GapCollapse(std::string("at t=") + std::to_string(t) + ": " + e.what());
        }
    }

    Mat Q(double t, double h) const {
        const Contour g = contour_at(t);
        const Mat P = projection(t, g);
        Mat Pd;
        if (opt_.resolvent_derivative) {
            Pd = projection_derivative_resolvent(c_.value(t), c_.deriv(t), g, 256);
        } else {
            Pd = (-projection(t + 2 * h, g) + 8.0 * projection(t + h, g) - 8.0 * projection(t - h, g) +
                  projection(t - 2 * h, g)) /
                 (12.0 * h);
        }
        return commutator_Q(P, Pd);
    }

private:
    const Curve& c_;
    const TransportOptions& opt_;
    std::vector<Complex> ref_;
    std::vector<int> group_;
};

}  // namespace

TransportResult transport(const Curve& c, double a, double b, int m, const std::vector<int>& group,
                          const TransportOptions& opt) {
    if (m < 1 || !(a < b)) throw InvalidArgument("transport: invalid grid");
    const int n = c.n;
    GroupProjector gp(c, group, opt);
    gp.reset(a);
    const double h = (b - a) / m;

    TransportResult res;
    Mat U = Mat::Identity(n, n);
    const Contour g0 = gp.contour_at(a);
    const Mat P0 = gp.projection(a, g0);
    const int rank = rank_of(P0);
    const Mat V0 = frame_of(P0, rank);

    auto record = [&](double t, const Mat& Ut) {
        const Mat Pt = gp.projection(t, gp.contour_at(t));
        if (rank_of(Pt) != rank) throw GapCollapse("rank of the group projection changed at t=" + std::to_string(t));
        res.grid.push_back(t);
        res.U.push_back(Ut);
        res.P.push_back(Pt);
        const Mat F = Ut * V0;
        res.frames.push_back(F);
        res.unitarity_residual =
            std::max(res.unitarity_residual, (Ut.adjoint() * Ut - Mat::Identity(n, n)).norm());
        res.intertwining_residual = std::max(res.intertwining_residual, (Ut * P0 * Ut.adjoint() - Pt).norm());
        if (rank == 1) {
            const Mat A = c.value(t);
            const Vec v = F.col(0);
            const Complex lam = v.dot(A * v);
            const double an = std::max(A.norm(), 1e-300);
            res.eigen_residual = std::max(res.eigen_residual, (A * v - lam * v).norm() / an);
        }
    };

    record(a, U);
    for (int k = 0; k < m; ++k) {
        const double t = a + k * h;
        const Mat K1 = gp.Q(t, h) * U;
        const Mat K2 = gp.Q(t + h / 2, h) * (U + (h / 2) * K1);
        const Mat K3 = gp.Q(t + h / 2, h) * (U + (h / 2) * K2);
        const Mat K4 = gp.Q(t + h, h) * (U + h * K3);
        U += (h / 6.0) * (K1 + 2.0 * K2 + 2.0 * K3 + K4);
        const double t1 = k + 1 == m ? b : a + (k + 1) * h;
        gp.advance(t1);
        record(t1, U);
    }
    if (res.unitarity_residual > opt.trans_tol || res.intertwining_residual > opt.trans_tol)
        throw ToleranceExceeded("transport residuals: unitarity " + std::to_string(res.unitarity_residual) +
                                ", intertwining " + std::to_string(res.intertwining_residual));
    return res;
}

}  // namespace normspec
