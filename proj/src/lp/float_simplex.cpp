#include "lp/float_simplex.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace ctfpack::detail {

namespace {

    constexpr double kPricingTol = 1e-9;
    constexpr double kPivotTol = 1e-9;
    constexpr int kRefactorEvery = 100;
    constexpr int kDegenerateBeforeBland = 50;
    constexpr int kMaxIterations = 200000;

    class FloatSimplex {
    public:
        explicit FloatSimplex(const PackingModel& model) :
            model_(model), m_(model.rows()), n_(model.columns()), binv_(static_cast<std::size_t>(m_) * m_),
            xb_(m_), y_(m_), alpha_(m_), head_(m_)
        {
        }

        bool load(std::span<const int> head)
        {
            if (static_cast<int>(head.size()) != m_)
                return false;
            head_.assign(head.begin(), head.end());
            if (! refactor())
                return false;
            for (double v : xb_)
                if (v < -1e-9)
                    return false;
            return true;
        }

        void load_slacks()
        {
            for (int i = 0; i < m_; ++i)
                head_[i] = n_ + i;
            refactor();
        }

        FloatSolution run()
        {
            FloatSolution out;
            bool bland = false;
            int degenerate_run = 0;
            for (int iter = 0; iter < kMaxIterations; ++iter) {
                if (iter > 0 && iter % kRefactorEvery == 0 && ! refactor())
                    return out;
                double d = 0.0;
                const int q = price(bland, d);
                if (q < 0) {
                    out.optimal = true;
                    out.iterations = iter;
                    break;
                }
                compute_alpha(q);
                const int r = ratio_test(bland);
                if (r < 0)
                    return out;
                const double theta = std::max(0.0, xb_[r] / alpha_[r]);
                if (theta < 1e-12) {
                    if (++degenerate_run > kDegenerateBeforeBland)
                        bland = true;
                }
                else
                    degenerate_run = 0;
                pivot(q, r, d, theta);
            }
            if (! out.optimal)
                return out;
            refactor();
            out.head = head_;
            out.x.assign(n_, 0.0);
            out.objective = 0.0;
            for (int i = 0; i < m_; ++i)
                if (head_[i] < n_) {
                    out.x[head_[i]] = std::max(0.0, xb_[i]);
                    out.objective += out.x[head_[i]];
                }
            out.y = y_;
            return out;
        }

    private:
        double* row(int i) { return binv_.data() + static_cast<std::size_t>(i) * m_; }

        double column_dot_y(int j) const
        {
            if (j < n_) {
                const auto& rs = model_.column_rows[j];
                return y_[rs[0]] + y_[rs[1]] + y_[rs[2]];
            }
            return y_[j - n_];
        }

        int price(bool bland, double& reduced)
        {
            int best = -1;
            double best_d = kPricingTol;
            const int total = n_ + m_;
            for (int j = 0; j < total; ++j) {
                if (basic_[j])
                    continue;
                const double d = (j < n_ ? 1.0 : 0.0) - column_dot_y(j);
                if (d > best_d) {
                    best = j;
                    best_d = d;
                    if (bland)
                        break;
                }
            }
            reduced = best_d;
            return best;
        }

        void compute_alpha(int q)
        {
            if (q < n_) {
                const auto& rs = model_.column_rows[q];
                for (int i = 0; i < m_; ++i) {
                    const double* ri = row(i);
                    alpha_[i] = ri[rs[0]] + ri[rs[1]] + ri[rs[2]];
                }
            }
            else
                for (int i = 0; i < m_; ++i)
                    alpha_[i] = row(i)[q - n_];
        }

        int ratio_test(bool bland) const
        {
            int best = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < m_; ++i) {
                if (alpha_[i] <= kPivotTol)
                    continue;
                const double ratio = std::max(0.0, xb_[i]) / alpha_[i];
                if (best < 0 || ratio < best_ratio - 1e-12) {
                    best = i;
                    best_ratio = ratio;
                }
                else if (ratio <= best_ratio + 1e-12) {
                    const bool better = bland ? head_[i] < head_[best] : alpha_[i] > alpha_[best];
                    if (better) {
                        best = i;
                        best_ratio = std::min(best_ratio, ratio);
                    }
                }
            }
            return best;
        }

        void pivot(int q, int r, double reduced, double theta)
        {
            const double pivot_value = alpha_[r];
            double* rr = row(r);
            const double scale = reduced / pivot_value;
            for (int k = 0; k < m_; ++k)
                y_[k] += scale * rr[k];
            for (int i = 0; i < m_; ++i)
                xb_[i] -= theta * alpha_[i];
            xb_[r] = theta;
            for (int k = 0; k < m_; ++k)
                rr[k] /= pivot_value;
            for (int i = 0; i < m_; ++i) {
                if (i == r || alpha_[i] == 0.0)
                    continue;
                double* ri = row(i);
                const double f = alpha_[i];
                for (int k = 0; k < m_; ++k)
                    ri[k] -= f * rr[k];
            }
            basic_[head_[r]] = 0;
            basic_[q] = 1;
            head_[r] = q;
        }

        bool refactor()
        {
            basic_.assign(static_cast<std::size_t>(n_ + m_), 0);
            for (int h : head_)
                basic_[h] = 1;
            Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(m_, m_);
            for (int i = 0; i < m_; ++i) {
                const int j = head_[i];
                if (j < n_)
                    for (int r : model_.column_rows[j])
                        basis(r, i) = 1.0;
                else
                    basis(j - n_, i) = 1.0;
            }
            Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis);
            if (std::abs(lu.determinant()) < 0.5) // integer matrix: |det| >= 1 when regular
                return false;
            const Eigen::MatrixXd inv = lu.inverse();
            for (int i = 0; i < m_; ++i)
                for (int k = 0; k < m_; ++k)
                    row(i)[k] = inv(i, k);
            for (int i = 0; i < m_; ++i) {
                double s = 0.0;
                const double* ri = row(i);
                for (int k = 0; k < m_; ++k)
                    s += ri[k];
                xb_[i] = s;
            }
            std::fill(y_.begin(), y_.end(), 0.0);
            for (int i = 0; i < m_; ++i)
                if (head_[i] < n_) {
                    const double* ri = row(i);
                    for (int k = 0; k < m_; ++k)
                        y_[k] += ri[k];
                }
            return true;
        }

        const PackingModel& model_;
        int m_;
        int n_;
        std::vector<double> binv_;
        std::vector<double> xb_;
        std::vector<double> y_;
        std::vector<double> alpha_;
        std::vector<int> head_;
        std::vector<char> basic_;
    };

} // namespace

FloatSolution solve_float(const PackingModel& model, std::span<const int> warm_head)
{
    FloatSimplex simplex(model);
    if (warm_head.empty() || ! simplex.load(warm_head))
        simplex.load_slacks();
    return simplex.run();
}

} // namespace ctfpack::detail
