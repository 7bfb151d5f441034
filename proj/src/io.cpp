#include "scope/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

namespace scope {

namespace {

using nlohmann::json;

json real_part_rows(const Matrix& m, bool imag) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(imag ? m(i, j).imag() : m(i, j).real());
        rows.push_back(std::move(row));
    }
    return rows;
}

// Parses one of the split arrays into a real matrix, validating shape.
RealMatrix parse_real_rows(const json& j, const std::string& field, const std::string& context) {
    if (!j.contains(field)) throw ParseError(context + ": missing field \"" + field + "\"");
    const json& rows = j.at(field);
    if (!rows.is_array() || rows.empty())
        throw ParseError(context + ": field \"" + field + "\" must be a non-empty array of rows");
    const std::size_t ncols = rows.front().is_array() ? rows.front().size() : 0;
    if (ncols == 0)
        throw ParseError(context + ": field \"" + field + "\" rows must be non-empty arrays");
    RealMatrix out(rows.size(), ncols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != ncols)
            throw ParseError(context + ": field \"" + field + "\" has ragged rows");
        for (std::size_t k = 0; k < ncols; ++k) {
            if (!row[k].is_number())
                throw ParseError(context + ": field \"" + field + "\" contains a non-number");
            out(Eigen::Index(i), Eigen::Index(k)) = row[k].get<double>();
        }
    }
    return out;
}

int parse_int_field(const json& j, const std::string& field, const std::string& context) {
    if (!j.contains(field)) throw ParseError(context + ": missing field \"" + field + "\"");
    if (!j.at(field).is_number_integer())
        throw ParseError(context + ": field \"" + field + "\" must be an integer");
    return j.at(field).get<int>();
}

void require_kind(const json& j, const std::string& kind, const std::string& context) {
    if (!j.contains("kind")) throw ParseError(context + ": missing field \"kind\"");
    if (j.at("kind") != kind)
        throw ParseError(context + ": field \"kind\" must be \"" + kind + "\"");
}

}  // namespace

json matrix_to_json_parts(const Matrix& m) {
    return {{"re", real_part_rows(m, false)}, {"im", real_part_rows(m, true)}};
}

Matrix matrix_from_json_parts(const json& j, const std::string& context) {
    const RealMatrix re = parse_real_rows(j, "re", context);
    const RealMatrix im = parse_real_rows(j, "im", context);
    if (re.rows() != im.rows() || re.cols() != im.cols())
        throw ParseError(context + ": \"re\" and \"im\" shapes differ");
    Matrix out(re.rows(), re.cols());
    out.real() = re;
    out.imag() = im;
    return out;
}

json state_to_json(const Matrix& rho, int na, int nb) {
    json j = matrix_to_json_parts(rho);
    j["kind"] = "state";
    j["na"] = na;
    j["nb"] = nb;
    return j;
}

ParsedState state_from_json(const json& j) {
    require_kind(j, "state", "state file");
    ParsedState out;
    out.na = parse_int_field(j, "na", "state file");
    out.nb = parse_int_field(j, "nb", "state file");
    if (out.na < 2 || out.nb < 2) throw ParseError("state file: \"na\" and \"nb\" must be >= 2");
    out.m = matrix_from_json_parts(j, "state file");
    const Eigen::Index n = Eigen::Index(out.na) * out.nb;
    if (out.m.rows() != n || out.m.cols() != n)
        throw ParseError("state file: matrix shape does not equal na*nb x na*nb");
    return out;
}

json channel_to_json(const QuantumChannel& ch) {
    json kraus = json::array();
    for (const Matrix& k : ch.kraus()) kraus.push_back(matrix_to_json_parts(k));
    return {{"kind", "channel"},
            {"in_dim", ch.in_dim()},
            {"out_dim", ch.out_dim()},
            {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const json& j, double tol) {
    require_kind(j, "channel", "channel file");
    const int in_dim = parse_int_field(j, "in_dim", "channel file");
    const int out_dim = parse_int_field(j, "out_dim", "channel file");
    if (!j.contains("kraus")) throw ParseError("channel file: missing field \"kraus\"");
    if (!j.at("kraus").is_array() || j.at("kraus").empty())
        throw ParseError("channel file: field \"kraus\" must be a non-empty array");
    std::vector<Matrix> kraus;
    for (const json& kj : j.at("kraus")) {
        Matrix k = matrix_from_json_parts(kj, "channel file kraus entry");
        if (k.rows() != out_dim || k.cols() != in_dim)
            throw ParseError("channel file: kraus entry shape does not equal out_dim x in_dim");
        kraus.push_back(std::move(k));
    }
    return QuantumChannel::from_kraus(std::move(kraus), tol);
}

json criterion_to_json(const CriterionReport& rep) {
    return {{"criterion_id", rep.criterion_id},
            {"lhs", rep.lhs},
            {"bound", rep.bound},
            {"margin", rep.margin},
            {"verdict", rep.verdict},
            {"params", rep.params}};
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

}  // namespace scope
