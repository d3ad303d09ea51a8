#include "oemswap/covmatrix.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <stdexcept>

namespace oemswap {

std::string to_string(const ModeLabel& m) {
    return std::string(1, m.role) + std::to_string(m.site);
}

ModeLabel parse_mode_label(const std::string& s) {
    if (s.size() < 2 || std::string("wbcm").find(s[0]) == std::string::npos)
        throw std::invalid_argument("bad mode label: " + s);
    return ModeLabel{std::stoi(s.substr(1)), s[0]};
}

Eigen::MatrixXd symplectic_form(int n_modes) {
    Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int k = 0; k < n_modes; ++k) {
        sigma(2 * k, 2 * k + 1) = 1.0;
        sigma(2 * k + 1, 2 * k) = -1.0;
    }
    return sigma;
}

CovMatrix::CovMatrix(std::vector<ModeLabel> modes, Eigen::MatrixXd data)
    : modes_(std::move(modes)), data_(std::move(data)) {
    const auto n = static_cast<Eigen::Index>(modes_.size());
    if (data_.rows() != data_.cols() || data_.rows() != 2 * n)
        throw std::invalid_argument("CovMatrix: dimension must be 2 x #modes");
    if ((data_ - data_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("CovMatrix: matrix is not symmetric");
    for (std::size_t i = 0; i < modes_.size(); ++i)
        for (std::size_t j = i + 1; j < modes_.size(); ++j)
            if (modes_[i] == modes_[j])
                throw std::invalid_argument("CovMatrix: duplicate mode label " +
                                            to_string(modes_[i]));
}

CovMatrix CovMatrix::vacuum(std::vector<ModeLabel> modes) {
    const auto n = static_cast<Eigen::Index>(modes.size());
    return CovMatrix(std::move(modes),
                     0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n));
}

int CovMatrix::index_of(const ModeLabel& m) const {
    auto it = std::find(modes_.begin(), modes_.end(), m);
    if (it == modes_.end())
        throw std::invalid_argument("CovMatrix: unknown mode " + to_string(m));
    return static_cast<int>(it - modes_.begin());
}

bool CovMatrix::has_mode(const ModeLabel& m) const {
    return std::find(modes_.begin(), modes_.end(), m) != modes_.end();
}

Eigen::Matrix2d CovMatrix::mode_block(const ModeLabel& a,
                                      const ModeLabel& b) const {
    return data_.block<2, 2>(2 * index_of(a), 2 * index_of(b));
}

CovMatrix CovMatrix::reduced(const std::vector<ModeLabel>& keep) const {
    const auto n = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXd out(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            out.block<2, 2>(2 * i, 2 * j) =
                data_.block<2, 2>(2 * index_of(keep[i]), 2 * index_of(keep[j]));
    return CovMatrix(keep, std::move(out));
}

CovMatrix CovMatrix::reordered(const std::vector<ModeLabel>& order) const {
    if (order.size() != modes_.size())
        throw std::invalid_argument("CovMatrix: reorder must keep all modes");
    return reduced(order);
}

CovMatrix CovMatrix::relabeled(const std::vector<ModeLabel>& new_labels) const {
    return CovMatrix(new_labels, data_);
}

nlohmann::json CovMatrix::to_json() const {
    nlohmann::json j;
    j["modes"] = nlohmann::json::array();
    for (const auto& m : modes_) j["modes"].push_back(to_string(m));
    j["data"] = nlohmann::json::array();
    for (Eigen::Index i = 0; i < data_.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < data_.cols(); ++k) row.push_back(data_(i, k));
        j["data"].push_back(std::move(row));
    }
    return j;
}

CovMatrix CovMatrix::from_json(const nlohmann::json& j) {
    std::vector<ModeLabel> modes;
    for (const auto& s : j.at("modes"))
        modes.push_back(parse_mode_label(s.get<std::string>()));
    const auto& rows = j.at("data");
    Eigen::MatrixXd data(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size())
            throw std::invalid_argument("CovMatrix: ragged data");
        for (std::size_t k = 0; k < rows.size(); ++k)
            data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                rows[i][k].get<double>();
    }
    return CovMatrix(std::move(modes), std::move(data));
}

}  // namespace oemswap
