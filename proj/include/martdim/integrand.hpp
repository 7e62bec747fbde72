#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "martdim/paths.hpp"

namespace martdim {

/// Read-only window onto one driver path, truncated at a step. Evaluators can
/// read values at steps 0..step() only; reading past the window throws. This
/// is what keeps every integrand predictable by construction.
class DriverView {
public:
    DriverView(const BrownianPaths& z, std::int64_t path, std::int64_t step)
        : z_(&z), path_(path), step_(step) {}

    int dim() const { return z_->d; }
    std::int64_t step() const { return step_; }
    double t() const { return z_->grid.time(step_); }

    double value(std::int64_t i, int j) const {
        if (i < 0 || i > step_)
            throw std::out_of_range("integrand read outside its predictable window");
        if (j < 0 || j >= z_->d) throw std::out_of_range("driver coordinate out of range");
        return z_->value(path_, i, j);
    }

    /// Driver value at the window's endpoint, Z(t_step).
    Eigen::Map<const Eigen::VectorXd> current() const { return z_->point(path_, step_); }

private:
    const BrownianPaths* z_;
    std::int64_t path_;
    std::int64_t step_;
};

/// A predictable n x d matrix process: a deterministic function of the driver
/// path up to the evaluation step.
class MatrixIntegrand {
public:
    using Evaluator = std::function<void(const DriverView&, Eigen::MatrixXd&)>;

    MatrixIntegrand() = default;
    MatrixIntegrand(int rows, int cols, bool constant, std::string name, Evaluator fn)
        : rows_(rows), cols_(cols), constant_(constant), name_(std::move(name)),
          fn_(std::move(fn)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_constant() const { return constant_; }
    const std::string& name() const { return name_; }
    bool valid() const { return static_cast<bool>(fn_); }

    void evaluate_on_view(const DriverView& view, Eigen::MatrixXd& out) const {
        out.resize(rows_, cols_);
        fn_(view, out);
    }

    void evaluate_into(const BrownianPaths& z, std::int64_t path, std::int64_t step,
                       Eigen::MatrixXd& out) const {
        evaluate_on_view(DriverView(z, path, step), out);
    }

    Eigen::MatrixXd evaluate(const BrownianPaths& z, std::int64_t path,
                             std::int64_t step) const {
        Eigen::MatrixXd out;
        evaluate_into(z, path, step, out);
        return out;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    bool constant_ = false;
    std::string name_;
    Evaluator fn_;
};

/// A predictable process of orthonormal bases of the driver space; rows of
/// the evaluated d x d matrix are the frame vectors u_1..u_d.
class FrameField {
public:
    using Evaluator = std::function<void(const DriverView&, Eigen::MatrixXd&)>;

    FrameField() = default;
    FrameField(int dim, bool constant, std::string name, Evaluator fn)
        : dim_(dim), constant_(constant), name_(std::move(name)), fn_(std::move(fn)) {}

    int dim() const { return dim_; }
    bool is_constant() const { return constant_; }
    const std::string& name() const { return name_; }
    bool valid() const { return static_cast<bool>(fn_); }

    void evaluate_on_view(const DriverView& view, Eigen::MatrixXd& out) const {
        out.resize(dim_, dim_);
        fn_(view, out);
    }

    void evaluate_into(const BrownianPaths& z, std::int64_t path, std::int64_t step,
                       Eigen::MatrixXd& out) const {
        evaluate_on_view(DriverView(z, path, step), out);
    }

    Eigen::MatrixXd evaluate(const BrownianPaths& z, std::int64_t path,
                             std::int64_t step) const {
        Eigen::MatrixXd out;
        evaluate_into(z, path, step, out);
        return out;
    }

private:
    int dim_ = 0;
    bool constant_ = false;
    std::string name_;
    Evaluator fn_;
};

namespace integrands {

MatrixIntegrand constant(const Eigen::MatrixXd& a);

/// 1 x d row e_coord; coord is 1-based (Z1..Zd).
MatrixIntegrand coordinate_row(int coord, int d);

/// 1 x d row Z_value(t) * e_target; state_coordinate_row(2, 1, 2) is the
/// integrand of the stochastic area example, int Z2 dZ1.
MatrixIntegrand state_coordinate_row(int value_coord, int target_coord, int d);

/// n x d with entries tanh(Z_j + (i+1)/2), smooth and generically full rank.
MatrixIntegrand sigmoid(int n, int d);

/// n x d with entries Z_j^(i+1) (rows are increasing monomial powers).
MatrixIntegrand monomial(int n, int d);

/// d x d projection u_i^T u_i onto frame direction i (1-based).
MatrixIntegrand frame_projection(int index, const FrameField& frame);

/// Sum over frame directions first..last (1-based, inclusive) of u_i^T u_i.
MatrixIntegrand block_projection(const FrameField& frame, int first, int last);

MatrixIntegrand stack(std::vector<MatrixIntegrand> parts);

/// (d+n) x d integrand of (Z, X): identity block on top of h.
MatrixIntegrand graph_of(const MatrixIntegrand& h);

MatrixIntegrand sum(std::vector<MatrixIntegrand> parts);
MatrixIntegrand scale(double factor, const MatrixIntegrand& h);
MatrixIntegrand left_mul(const Eigen::MatrixXd& a, const MatrixIntegrand& h);
MatrixIntegrand right_mul(const MatrixIntegrand& h, const Eigen::MatrixXd& b);

/// Constant diag(sqrt(s), sqrt(1-s)) on a 2-d driver, s in [0, 1].
MatrixIntegrand homotopy(double s);

}  // namespace integrands

namespace frames {

FrameField standard(int d);
FrameField constant(const Eigen::MatrixXd& rows);  // validates orthonormality
FrameField rotation2(double angle);
/// Predictable path-dependent frame on d=2: rotation by angle Z1(t).
FrameField state_rotation2();

}  // namespace frames

/// Builders from the tagged JSON descriptions used in experiment configs.
MatrixIntegrand integrand_from_spec(const nlohmann::json& spec);
FrameField frame_from_spec(const nlohmann::json& spec);

}  // namespace martdim
