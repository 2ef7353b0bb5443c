#include "mpbvp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mpbvp/errors.hpp"
#include "strcat.hpp"

namespace mpbvp {

namespace {

std::vector<double> number_array(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key)) return {};
    const auto& v = j.at(key);
    if (!v.is_array())
        throw InvalidProblem(detail::cat("field '", key, "' must be an array of numbers"));
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number())
            throw InvalidProblem(detail::cat("field '", key, "' must contain only numbers"));
        out.push_back(e.get<double>());
    }
    return out;
}

// splits "name:rest" and the comma-separated parameters of rest
std::pair<std::string, std::vector<std::string>> split_grammar(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    std::vector<std::string> params;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        size_t pos = 0;
        while (true) {
            const auto comma = rest.find(',', pos);
            params.push_back(rest.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    return {name, params};
}

double parse_number(const std::string& text, const std::string& what) {
    try {
        size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InvalidProblem(detail::cat("could not parse ", what, " from '", text, "'"));
    }
}

} // namespace

ProblemSpec ProblemFile::to_spec() const {
    // the in-memory spec records cone status permissively; the file format is
    // the strict entry point, so over-heavy coefficient rows stop here
    auto mass = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += std::fabs(x);
        return s;
    };
    if (mass(alpha_minus) >= 1.0)
        throw InvalidProblem(detail::cat("minus side: coefficient mass ",
                                         mass(alpha_minus), " must be < 1"));
    if (mass(alpha_plus) >= 1.0)
        throw InvalidProblem(detail::cat("plus side: coefficient mass ",
                                         mass(alpha_plus), " must be < 1"));
    return ProblemSpec(alpha_minus, eta_minus, alpha_plus, eta_plus, allow_outside_cone);
}

ProblemFile parse_problem_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidProblem(detail::cat("problem file is not valid JSON: ", e.what()));
    }
    if (!j.is_object()) throw InvalidProblem("problem file must be a JSON object");

    ProblemFile f;
    f.alpha_minus = number_array(j, "alpha_minus");
    f.eta_minus = number_array(j, "eta_minus");
    f.alpha_plus = number_array(j, "alpha_plus");
    f.eta_plus = number_array(j, "eta_plus");
    if (j.contains("allow_outside_cone")) {
        if (!j.at("allow_outside_cone").is_boolean())
            throw InvalidProblem("field 'allow_outside_cone' must be a boolean");
        f.allow_outside_cone = j.at("allow_outside_cone").get<bool>();
    }
    (void)f.to_spec(); // validate eagerly so diagnostics point at the file
    return f;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidProblem(detail::cat("cannot open problem file '", path, "'"));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_json(buf.str());
}

Forcing parse_forcing(const std::string& text) {
    const auto [name, params] = split_grammar(text);
    if (name == "zero") {
        if (!params.empty()) throw InvalidProblem("forcing 'zero' takes no parameters");
        return Forcing::zero();
    }
    if (name == "one") {
        if (!params.empty()) throw InvalidProblem("forcing 'one' takes no parameters");
        return Forcing::one();
    }
    if (name == "step") {
        if (params.size() != 1 && params.size() != 2)
            throw InvalidProblem("forcing 'step' needs x0 and optionally a level: step:x0[,level]");
        const double x0 = parse_number(params[0], "step x0");
        const double level = params.size() == 2 ? parse_number(params[1], "step level") : -1.0;
        return Forcing::step(x0, level);
    }
    if (name == "samples") {
        if (params.size() != 1)
            throw InvalidProblem("forcing 'samples' needs a file path: samples:path");
        auto pairs = read_two_column_csv(params[0]);
        std::vector<double> xs, hs;
        xs.reserve(pairs.size());
        hs.reserve(pairs.size());
        for (auto& [x, h] : pairs) {
            xs.push_back(x);
            hs.push_back(h);
        }
        return Forcing::samples(std::move(xs), std::move(hs));
    }
    throw InvalidProblem(detail::cat("unknown forcing '", text,
                                     "'; expected zero | one | step:x0[,level] | samples:path"));
}

Nonlinearity parse_nonlinearity(const std::string& text) {
    const auto [name, params] = split_grammar(text);
    if (name == "linear") {
        if (params.size() != 1) throw InvalidProblem("nonlinearity 'linear' needs one slope: linear:c");
        return Nonlinearity::linear(parse_number(params[0], "linear slope"));
    }
    if (name == "rational_bump") {
        if (params.size() != 2)
            throw InvalidProblem("nonlinearity 'rational_bump' needs two parameters: rational_bump:f0,finf");
        return Nonlinearity::rational_bump(parse_number(params[0], "f0"),
                                           parse_number(params[1], "finf"));
    }
    if (name == "atan_shift") {
        if (params.size() != 3)
            throw InvalidProblem(
                "nonlinearity 'atan_shift' needs three parameters: atan_shift:finf,fminf,amp");
        return Nonlinearity::atan_shift(parse_number(params[0], "finf"),
                                        parse_number(params[1], "fminf"),
                                        parse_number(params[2], "amp"));
    }
    throw InvalidProblem(detail::cat(
        "unknown nonlinearity '", text,
        "'; expected linear:c | rational_bump:f0,finf | atan_shift:finf,fminf,amp"));
}

NodalClass parse_nodal(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw InvalidProblem(detail::cat("nodal class must look like 'k,+' or 'k,-', got '",
                                         text, "'"));
    const double kd = parse_number(text.substr(0, comma), "nodal count k");
    const int k = static_cast<int>(kd);
    if (kd != k || k < 1)
        throw InvalidProblem(detail::cat("nodal count must be a positive integer, got '",
                                         text.substr(0, comma), "'"));
    const std::string sign = text.substr(comma + 1);
    int nu = 0;
    if (sign == "+" || sign == "+1") nu = +1;
    if (sign == "-" || sign == "-1") nu = -1;
    if (nu == 0)
        throw InvalidProblem(detail::cat("nodal sign must be '+' or '-', got '", sign, "'"));
    return NodalClass{k, nu};
}

std::string format_float(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary); // binary: keep LF on every platform
    if (!out) throw Error(detail::cat("cannot open '", path, "' for writing"));
    out << header << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            out << format_float(row[i]);
        }
        out << "\n";
    }
    if (!out) throw Error(detail::cat("write to '", path, "' failed"));
}

std::vector<std::pair<double, double>> read_two_column_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidProblem(detail::cat("cannot open samples file '", path, "'"));
    std::vector<std::pair<double, double>> out;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw InvalidProblem(detail::cat("samples file '", path,
                                             "' needs two comma-separated columns"));
        try {
            out.emplace_back(std::stod(line.substr(0, comma)),
                             std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            if (first) { // header row
                first = false;
                continue;
            }
            throw InvalidProblem(detail::cat("bad number in samples file '", path, "': ", line));
        }
        first = false;
    }
    return out;
}

} // namespace mpbvp
