#include "mvgamma/json_io.hpp"

#include <stdexcept>

namespace mvg {
namespace {

std::vector<std::vector<double>> rows_from_json(const nlohmann::json& j) {
    if (j.is_number()) return {{j.get<double>()}};
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("matrix: expected rows as a nonempty array");
    if (j.front().is_number()) {
        // Bare vector: only a 1x1 matrix is unambiguous.
        if (j.size() != 1)
            throw std::invalid_argument("matrix: bare arrays are only accepted for 1x1 matrices");
        return {{j.front().get<double>()}};
    }
    return j.get<std::vector<std::vector<double>>>();
}

}  // namespace

nlohmann::json matrix_to_json(const SymMatrix& m) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(m.dim()));
    for (int i = 0; i < m.dim(); ++i) {
        rows[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(m.dim()));
        for (int j = 0; j < m.dim(); ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
    }
    return {{"dim", m.dim()}, {"rows", rows}};
}

SymMatrix matrix_from_json(const nlohmann::json& j) {
    if (j.is_object()) {
        if (!j.contains("rows")) throw std::invalid_argument("matrix: missing \"rows\"");
        const auto rows = rows_from_json(j.at("rows"));
        const SymMatrix m = SymMatrix::from_rows(rows);
        if (j.contains("dim") && j.at("dim").get<int>() != m.dim())
            throw std::invalid_argument("matrix: \"dim\" does not match the row count");
        return m;
    }
    return SymMatrix::from_rows(rows_from_json(j));
}

nlohmann::json partition_to_json(const MatrixPartition& partition) {
    nlohmann::json parts = nlohmann::json::array();
    for (int i = 0; i < partition.parts_count(); ++i)
        parts.push_back(matrix_to_json(partition.part(i)));
    return {{"dim", partition.dim()}, {"parts", parts}};
}

MatrixPartition partition_from_json(const nlohmann::json& j) {
    const nlohmann::json* parts = nullptr;
    if (j.is_object()) {
        if (!j.contains("parts")) throw std::invalid_argument("partition: missing \"parts\"");
        parts = &j.at("parts");
    } else if (j.is_array()) {
        parts = &j;
    } else {
        throw std::invalid_argument("partition: expected an object or an array of matrices");
    }
    if (!parts->is_array() || parts->empty())
        throw std::invalid_argument("partition: \"parts\" must be a nonempty array");
    std::vector<SymMatrix> matrices;
    matrices.reserve(parts->size());
    for (const auto& entry : *parts) matrices.push_back(matrix_from_json(entry));
    MatrixPartition partition(std::move(matrices));
    if (j.is_object() && j.contains("dim") && j.at("dim").get<int>() != partition.dim())
        throw std::invalid_argument("partition: \"dim\" does not match the parts");
    return partition;
}

nlohmann::json instance_to_json(const QInstance& inst) {
    std::vector<double> alpha(static_cast<std::size_t>(inst.r()));
    for (int i = 0; i < inst.r(); ++i) alpha[static_cast<std::size_t>(i)] = inst.alpha(i);
    return {{"m", inst.m()},
            {"n", inst.n()},
            {"alpha", alpha},
            {"partition", partition_to_json(inst.partition())}};
}

QInstance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("instance: expected an object");
    for (const char* field : {"n", "alpha", "partition"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("instance: missing \"") + field + "\"");
    MatrixPartition partition = partition_from_json(j.at("partition"));
    if (j.contains("m") && j.at("m").get<int>() != partition.dim())
        throw std::invalid_argument("instance: \"m\" does not match the partition dimension");
    return QInstance(j.at("n").get<int>(), j.at("alpha").get<std::vector<double>>(),
                     std::move(partition));
}

DirichletParams dirichlet_params_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("a"))
        throw std::invalid_argument("dirichlet params: expected {\"m\": ..., \"a\": [...]}");
    return DirichletParams(j.at("m").get<int>(), j.at("a").get<std::vector<double>>());
}

MultinomialParams multinomial_params_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("k"))
        throw std::invalid_argument(
            "multinomial params: expected {\"m\": ..., \"n\": ..., \"k\": [...]}");
    return MultinomialParams(j.at("m").get<int>(), j.at("n").get<int>(),
                             j.at("k").get<std::vector<int>>());
}

}  // namespace mvg
