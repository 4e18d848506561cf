#include "lp/exact_simplex.hpp"

namespace ctfpack::detail {

ExactSimplex::ExactSimplex(const PackingModel& model) :
    model_(model), m_(model.rows()), n_(model.columns()), binv_(static_cast<std::size_t>(m_) * m_), xb_(m_),
    y_(m_), alpha_(m_), head_(m_), basic_(static_cast<std::size_t>(n_ + m_), 0)
{
}

void ExactSimplex::load_slacks()
{
    std::fill(basic_.begin(), basic_.end(), 0);
    for (int i = 0; i < m_; ++i) {
        head_[i] = n_ + i;
        basic_[n_ + i] = 1;
        for (int k = 0; k < m_; ++k)
            inv(i, k) = i == k ? 1 : 0;
        xb_[i] = 1;
    }
    recompute_duals();
}

bool ExactSimplex::load(std::span<const int> head)
{
    if (static_cast<int>(head.size()) != m_)
        return false;
    // Gauss-Jordan on [B | I]; B is a 0/1 matrix with at most three entries per column.
    const int width = 2 * m_;
    std::vector<Rational> a(static_cast<std::size_t>(m_) * width);
    auto at = [&](int i, int k) -> Rational& { return a[static_cast<std::size_t>(i) * width + k]; };
    std::vector<char> seen(static_cast<std::size_t>(n_ + m_), 0);
    for (int c = 0; c < m_; ++c) {
        const int j = head[c];
        if (j < 0 || j >= n_ + m_ || seen[j])
            return false;
        seen[j] = 1;
        if (j < n_)
            for (int r : model_.column_rows[j])
                at(r, c) = 1;
        else
            at(j - n_, c) = 1;
        at(c, m_ + c) = 1;
    }
    std::vector<int> nonzero;
    nonzero.reserve(width);
    for (int col = 0; col < m_; ++col) {
        int p = -1;
        for (int i = col; i < m_; ++i)
            if (sgn(at(i, col)) != 0) {
                p = i;
                break;
            }
        if (p < 0)
            return false;
        if (p != col)
            for (int k = 0; k < width; ++k)
                std::swap(at(p, k), at(col, k));
        const Rational pivot = at(col, col);
        nonzero.clear();
        for (int k = 0; k < width; ++k)
            if (sgn(at(col, k)) != 0) {
                at(col, k) /= pivot;
                nonzero.push_back(k);
            }
        for (int i = 0; i < m_; ++i) {
            if (i == col || sgn(at(i, col)) == 0)
                continue;
            const Rational f = at(i, col);
            for (int k : nonzero)
                at(i, k) -= f * at(col, k);
        }
    }
    // Row c of B^{-1} belongs to basis position c.
    for (int i = 0; i < m_; ++i)
        for (int k = 0; k < m_; ++k)
            inv(i, k) = at(i, m_ + k);
    std::fill(basic_.begin(), basic_.end(), 0);
    for (int c = 0; c < m_; ++c) {
        head_[c] = head[c];
        basic_[head[c]] = 1;
        Rational s = 0;
        for (int k = 0; k < m_; ++k)
            s += inv(c, k);
        if (sgn(s) < 0)
            return false;
        xb_[c] = s;
    }
    recompute_duals();
    return true;
}

void ExactSimplex::recompute_duals()
{
    for (auto& v : y_)
        v = 0;
    for (int i = 0; i < m_; ++i)
        if (head_[i] < n_)
            for (int k = 0; k < m_; ++k)
                if (sgn(inv(i, k)) != 0)
                    y_[k] += inv(i, k);
}

int ExactSimplex::price() const
{
    Rational load;
    for (int j = 0; j < n_; ++j) {
        if (basic_[j])
            continue;
        const auto& rs = model_.column_rows[j];
        load = y_[rs[0]] + y_[rs[1]] + y_[rs[2]];
        if (load < 1)
            return j;
    }
    for (int i = 0; i < m_; ++i)
        if (! basic_[n_ + i] && sgn(y_[i]) < 0)
            return n_ + i;
    return -1;
}

void ExactSimplex::compute_alpha(int q)
{
    if (q < n_) {
        const auto& rs = model_.column_rows[q];
        for (int i = 0; i < m_; ++i)
            alpha_[i] = inv(i, rs[0]) + inv(i, rs[1]) + inv(i, rs[2]);
    }
    else
        for (int i = 0; i < m_; ++i)
            alpha_[i] = inv(i, q - n_);
}

int ExactSimplex::ratio_test() const
{
    int best = -1;
    Rational best_ratio, ratio;
    for (int i = 0; i < m_; ++i) {
        if (sgn(alpha_[i]) <= 0)
            continue;
        ratio = xb_[i] / alpha_[i];
        if (best < 0 || ratio < best_ratio || (ratio == best_ratio && head_[i] < head_[best])) {
            best = i;
            best_ratio = ratio;
        }
    }
    return best;
}

void ExactSimplex::pivot(int q, int r)
{
    const Rational pivot_value = alpha_[r];
    const Rational reduced = (q < n_ ? Rational(1) : Rational(0)) -
        (q < n_ ? y_[model_.column_rows[q][0]] + y_[model_.column_rows[q][1]] + y_[model_.column_rows[q][2]]
                : y_[q - n_]);
    const Rational theta = xb_[r] / pivot_value;

    std::vector<int> nonzero;
    for (int k = 0; k < m_; ++k)
        if (sgn(inv(r, k)) != 0) {
            inv(r, k) /= pivot_value;
            nonzero.push_back(k);
        }
    // y += reduced * (new pivot row), which equals (reduced / alpha_r) * old pivot row.
    if (sgn(reduced) != 0)
        for (int k : nonzero)
            y_[k] += reduced * inv(r, k);
    for (int i = 0; i < m_; ++i) {
        if (i == r || sgn(alpha_[i]) == 0)
            continue;
        if (sgn(theta) != 0)
            xb_[i] -= theta * alpha_[i];
        for (int k : nonzero)
            inv(i, k) -= alpha_[i] * inv(r, k);
    }
    xb_[r] = theta;
    basic_[head_[r]] = 0;
    basic_[q] = 1;
    head_[r] = q;
}

ExactSolution ExactSimplex::run()
{
    ExactSolution out;
    for (;;) {
        const int q = price();
        if (q < 0)
            break;
        compute_alpha(q);
        const int r = ratio_test();
        if (r < 0)
            throw std::logic_error("packing LP reported unbounded; the model is bounded by construction");
        pivot(q, r);
        ++out.pivots;
    }
    out.x.assign(n_, Rational(0));
    for (int i = 0; i < m_; ++i)
        if (head_[i] < n_) {
            out.x[head_[i]] = xb_[i];
            out.objective += xb_[i];
        }
    out.y = y_;
    return out;
}

} // namespace ctfpack::detail
