#include "martdim/integrand.hpp"

#include <cmath>
#include <sstream>

#include "martdim/errors.hpp"

namespace martdim {

namespace integrands {

MatrixIntegrand constant(const Eigen::MatrixXd& a) {
    if (!a.allFinite()) throw std::invalid_argument("constant integrand has non-finite entries");
    return {static_cast<int>(a.rows()), static_cast<int>(a.cols()), true, "constant",
            [a](const DriverView&, Eigen::MatrixXd& out) { out = a; }};
}

MatrixIntegrand coordinate_row(int coord, int d) {
    if (coord < 1 || coord > d) throw std::invalid_argument("coordinate index out of range");
    Eigen::MatrixXd row = Eigen::MatrixXd::Zero(1, d);
    row(0, coord - 1) = 1.0;
    return {1, d, true, "coordinate_row(" + std::to_string(coord) + ")",
            [row](const DriverView&, Eigen::MatrixXd& out) { out = row; }};
}

MatrixIntegrand state_coordinate_row(int value_coord, int target_coord, int d) {
    if (value_coord < 1 || value_coord > d)
        throw std::invalid_argument("value coordinate out of range");
    if (target_coord < 1 || target_coord > d)
        throw std::invalid_argument("target coordinate out of range");
    const int vc = value_coord - 1;
    const int tc = target_coord - 1;
    return {1, d, false,
            "state_coordinate_row(Z" + std::to_string(value_coord) + "->dZ" +
                std::to_string(target_coord) + ")",
            [vc, tc, d](const DriverView& view, Eigen::MatrixXd& out) {
                out.setZero(1, d);
                out(0, tc) = view.value(view.step(), vc);
            }};
}

MatrixIntegrand sigmoid(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("sigmoid integrand needs n, d >= 1");
    return {n, d, false, "sigmoid",
            [n, d](const DriverView& view, Eigen::MatrixXd& out) {
                const auto z = view.current();
                out.resize(n, d);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < d; ++j)
                        out(i, j) = std::tanh(z[j] + 0.5 * (i + 1));
            }};
}

MatrixIntegrand monomial(int n, int d) {
    if (n < 1 || d < 1) throw std::invalid_argument("monomial integrand needs n, d >= 1");
    return {n, d, false, "monomial",
            [n, d](const DriverView& view, Eigen::MatrixXd& out) {
                const auto z = view.current();
                out.resize(n, d);
                for (int j = 0; j < d; ++j) {
                    double p = z[j];
                    for (int i = 0; i < n; ++i) {
                        out(i, j) = p;
                        p *= z[j];
                    }
                }
            }};
}

MatrixIntegrand frame_projection(int index, const FrameField& frame) {
    return block_projection(frame, index, index);
}

MatrixIntegrand block_projection(const FrameField& frame, int first, int last) {
    const int d = frame.dim();
    if (first < 1 || last > d || first > last)
        throw std::invalid_argument("frame index range out of bounds");
    auto fn = [frame, first, last, d](const DriverView& view, Eigen::MatrixXd& out) {
        Eigen::MatrixXd q;
        // The frame runs on the same view, so predictability carries over.
        frame.evaluate_on_view(view, q);
        out.setZero(d, d);
        for (int i = first - 1; i < last; ++i)
            out.noalias() += q.row(i).transpose() * q.row(i);
    };
    std::ostringstream name;
    name << "frame_projection(" << frame.name() << "," << first << ".." << last << ")";
    return {d, d, frame.is_constant(), name.str(), std::move(fn)};
}

MatrixIntegrand stack(std::vector<MatrixIntegrand> parts) {
    if (parts.empty()) throw std::invalid_argument("stack needs at least one part");
    const int d = parts.front().cols();
    int n = 0;
    for (const auto& p : parts) {
        if (p.cols() != d) throw std::invalid_argument("stack parts disagree on driver dimension");
        n += p.rows();
    }
    bool constant = true;
    std::string name = "stack(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        constant = constant && parts[i].is_constant();
        name += (i ? "," : "") + parts[i].name();
    }
    name += ")";
    return {n, d, constant, std::move(name),
            [parts, n, d](const DriverView& view, Eigen::MatrixXd& out) {
                out.resize(n, d);
                Eigen::MatrixXd block;
                int row = 0;
                for (const auto& p : parts) {
                    block.resize(p.rows(), d);
                    p.evaluate_on_view(view, block);
                    out.middleRows(row, p.rows()) = block;
                    row += p.rows();
                }
            }};
}

MatrixIntegrand graph_of(const MatrixIntegrand& h) {
    const int d = h.cols();
    std::vector<MatrixIntegrand> parts;
    parts.push_back(constant(Eigen::MatrixXd::Identity(d, d)));
    parts.push_back(h);
    auto stacked = stack(std::move(parts));
    return {stacked.rows(), stacked.cols(), stacked.is_constant(), "graph(" + h.name() + ")",
            [stacked](const DriverView& view, Eigen::MatrixXd& out) {
                out.resize(stacked.rows(), stacked.cols());
                stacked.evaluate_on_view(view, out);
            }};
}

MatrixIntegrand sum(std::vector<MatrixIntegrand> parts) {
    if (parts.empty()) throw std::invalid_argument("sum needs at least one part");
    const int n = parts.front().rows();
    const int d = parts.front().cols();
    bool constant = true;
    for (const auto& p : parts) {
        if (p.rows() != n || p.cols() != d)
            throw std::invalid_argument("sum parts disagree on shape");
        constant = constant && p.is_constant();
    }
    std::string name = "sum(";
    for (std::size_t i = 0; i < parts.size(); ++i) name += (i ? "," : "") + parts[i].name();
    name += ")";
    // Summands are evaluated first, then added, so evaluate(sum) equals the
    // floating-point sum of the evaluates bitwise.
    return {n, d, constant, std::move(name),
            [parts, n, d](const DriverView& view, Eigen::MatrixXd& out) {
                Eigen::MatrixXd part(n, d);
                out.setZero(n, d);
                for (const auto& p : parts) {
                    p.evaluate_on_view(view, part);
                    out += part;
                }
            }};
}

MatrixIntegrand scale(double factor, const MatrixIntegrand& h) {
    return {h.rows(), h.cols(), h.is_constant(),
            "scale(" + std::to_string(factor) + "," + h.name() + ")",
            [factor, h](const DriverView& view, Eigen::MatrixXd& out) {
                out.resize(h.rows(), h.cols());
                h.evaluate_on_view(view, out);
                out *= factor;
            }};
}

MatrixIntegrand left_mul(const Eigen::MatrixXd& a, const MatrixIntegrand& h) {
    if (a.cols() != h.rows())
        throw std::invalid_argument("left factor columns must match integrand rows");
    return {static_cast<int>(a.rows()), h.cols(), h.is_constant(), "left_mul(" + h.name() + ")",
            [a, h](const DriverView& view, Eigen::MatrixXd& out) {
                Eigen::MatrixXd inner(h.rows(), h.cols());
                h.evaluate_on_view(view, inner);
                out.noalias() = a * inner;
            }};
}

MatrixIntegrand right_mul(const MatrixIntegrand& h, const Eigen::MatrixXd& b) {
    if (b.rows() != h.cols())
        throw std::invalid_argument("right factor rows must match integrand columns");
    if (b.cols() != h.cols())
        throw std::invalid_argument("right transform matrix must be d x d");
    return {h.rows(), static_cast<int>(b.cols()), h.is_constant(), "right_mul(" + h.name() + ")",
            [b, h](const DriverView& view, Eigen::MatrixXd& out) {
                Eigen::MatrixXd inner(h.rows(), h.cols());
                h.evaluate_on_view(view, inner);
                out.noalias() = inner * b;
            }};
}

MatrixIntegrand homotopy(double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("homotopy parameter outside [0,1]");
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 0) = std::sqrt(s);
    a(1, 1) = std::sqrt(1.0 - s);
    auto c = constant(a);
    return {2, 2, true, "homotopy(" + std::to_string(s) + ")",
            [c](const DriverView& view, Eigen::MatrixXd& out) {
                out.resize(2, 2);
                c.evaluate_on_view(view, out);
            }};
}

}  // namespace integrands

namespace frames {

FrameField standard(int d) {
    if (d < 1) throw std::invalid_argument("frame dimension must be at least 1");
    return {d, true, "standard",
            [d](const DriverView&, Eigen::MatrixXd& out) {
                out = Eigen::MatrixXd::Identity(d, d);
            }};
}

FrameField constant(const Eigen::MatrixXd& rows) {
    if (rows.rows() != rows.cols())
        throw std::invalid_argument("constant frame must be square");
    const int d = static_cast<int>(rows.rows());
    const double dev = (rows * rows.transpose() - Eigen::MatrixXd::Identity(d, d))
                           .cwiseAbs()
                           .maxCoeff();
    if (dev > 1e-12)
        throw OrthonormalityError("constant frame rows are not orthonormal (deviation " +
                                  std::to_string(dev) + ")");
    return {d, true, "constant",
            [rows](const DriverView&, Eigen::MatrixXd& out) { out = rows; }};
}

FrameField rotation2(double angle) {
    Eigen::MatrixXd q(2, 2);
    const double c = std::cos(angle), s = std::sin(angle);
    q << c, s, -s, c;
    return {2, true, "rotation2(" + std::to_string(angle) + ")",
            [q](const DriverView&, Eigen::MatrixXd& out) { out = q; }};
}

FrameField state_rotation2() {
    return {2, false, "state_rotation2",
            [](const DriverView& view, Eigen::MatrixXd& out) {
                const double a = view.value(view.step(), 0);
                const double c = std::cos(a), s = std::sin(a);
                out.resize(2, 2);
                out << c, s, -s, c;
            }};
}

}  // namespace frames

namespace {

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, const std::string& key) {
    if (!j.is_array() || j.empty() || !j.front().is_array())
        throw ConfigError(key, "expected an array of row arrays");
    const auto rows = static_cast<int>(j.size());
    const auto cols = static_cast<int>(j.front().size());
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r) {
        if (static_cast<int>(j[r].size()) != cols)
            throw ConfigError(key, "ragged matrix rows");
        for (int c = 0; c < cols; ++c) {
            if (!j[r][c].is_number()) throw ConfigError(key, "matrix entries must be numbers");
            m(r, c) = j[r][c].get<double>();
        }
    }
    return m;
}

template <typename T>
T require_field(const nlohmann::json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key)) throw ConfigError(path + "." + key, "missing");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(path + "." + key, "wrong type");
    }
}

}  // namespace

FrameField frame_from_spec(const nlohmann::json& spec) {
    if (!spec.is_object()) throw ConfigError("frame", "expected an object");
    const auto type = require_field<std::string>(spec, "type", "frame");
    if (type == "standard") {
        return frames::standard(require_field<int>(spec, "d", "frame"));
    }
    if (type == "constant") {
        if (!spec.contains("rows")) throw ConfigError("frame.rows", "missing");
        return frames::constant(matrix_from_json(spec.at("rows"), "frame.rows"));
    }
    if (type == "rotation2") {
        return frames::rotation2(require_field<double>(spec, "angle", "frame"));
    }
    if (type == "state_rotation2") {
        return frames::state_rotation2();
    }
    throw ConfigError("frame.type", "unknown frame type '" + type + "'");
}

MatrixIntegrand integrand_from_spec(const nlohmann::json& spec) {
    if (!spec.is_object()) throw ConfigError("integrand", "expected an object");
    const auto type = require_field<std::string>(spec, "type", "integrand");

    if (type == "constant") {
        if (!spec.contains("matrix")) throw ConfigError("integrand.matrix", "missing");
        return integrands::constant(matrix_from_json(spec.at("matrix"), "integrand.matrix"));
    }
    if (type == "coordinate_row") {
        return integrands::coordinate_row(require_field<int>(spec, "coord", "integrand"),
                                          require_field<int>(spec, "d", "integrand"));
    }
    if (type == "state_coordinate_row") {
        return integrands::state_coordinate_row(
            require_field<int>(spec, "value_coord", "integrand"),
            require_field<int>(spec, "target_coord", "integrand"),
            require_field<int>(spec, "d", "integrand"));
    }
    if (type == "sigmoid") {
        return integrands::sigmoid(require_field<int>(spec, "n", "integrand"),
                                   require_field<int>(spec, "d", "integrand"));
    }
    if (type == "monomial") {
        return integrands::monomial(require_field<int>(spec, "n", "integrand"),
                                    require_field<int>(spec, "d", "integrand"));
    }
    if (type == "frame_projection") {
        if (!spec.contains("frame")) throw ConfigError("integrand.frame", "missing");
        return integrands::frame_projection(require_field<int>(spec, "index", "integrand"),
                                            frame_from_spec(spec.at("frame")));
    }
    if (type == "homotopy") {
        return integrands::homotopy(require_field<double>(spec, "s", "integrand"));
    }
    if (type == "graph") {
        if (!spec.contains("inner")) throw ConfigError("integrand.inner", "missing");
        return integrands::graph_of(integrand_from_spec(spec.at("inner")));
    }
    if (type == "stack" || type == "sum") {
        if (!spec.contains("parts") || !spec.at("parts").is_array() || spec.at("parts").empty())
            throw ConfigError("integrand.parts", "expected a non-empty array");
        std::vector<MatrixIntegrand> parts;
        for (const auto& p : spec.at("parts")) parts.push_back(integrand_from_spec(p));
        return type == "stack" ? integrands::stack(std::move(parts))
                               : integrands::sum(std::move(parts));
    }
    if (type == "scale") {
        if (!spec.contains("inner")) throw ConfigError("integrand.inner", "missing");
        return integrands::scale(require_field<double>(spec, "factor", "integrand"),
                                 integrand_from_spec(spec.at("inner")));
    }
    if (type == "left_mul") {
        if (!spec.contains("inner")) throw ConfigError("integrand.inner", "missing");
        if (!spec.contains("matrix")) throw ConfigError("integrand.matrix", "missing");
        return integrands::left_mul(matrix_from_json(spec.at("matrix"), "integrand.matrix"),
                                    integrand_from_spec(spec.at("inner")));
    }
    if (type == "right_mul") {
        if (!spec.contains("inner")) throw ConfigError("integrand.inner", "missing");
        if (!spec.contains("matrix")) throw ConfigError("integrand.matrix", "missing");
        return integrands::right_mul(integrand_from_spec(spec.at("inner")),
                                     matrix_from_json(spec.at("matrix"), "integrand.matrix"));
    }
    throw ConfigError("integrand.type", "unknown integrand type '" + type + "'");
}

}  // namespace martdim
