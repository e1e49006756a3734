#include "tailcusum/series_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "tailcusum/error.hpp"

namespace tailcusum {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& text, double& value)
{
    if (text.empty()) return false;
    errno = 0;
    char* end = nullptr;
    value = std::strtod(text.c_str(), &end);
    return end == text.c_str() + text.size() && errno != ERANGE && std::isfinite(value);
}

std::vector<double> parse_numbers(const std::string& list, const std::string& context)
{
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        double v = 0.0;
        if (!parse_double(trim(item), v)) throw ParameterError("bad number '" + item + "' in " + context);
        out.push_back(v);
    }
    return out;
}

} // namespace

Series read_series(std::istream& in, const std::string& source)
{
    Series out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        double v = 0.0;
        if (!parse_double(text, v))
            throw ParameterError(source + ":" + std::to_string(line_no) + ": cannot parse '" + text +
                                 "' as a real number");
        out.push_back(v);
    }
    return out;
}

Series read_series_file(const std::string& path, std::istream& stdin_stream)
{
    if (path == "-") return read_series(stdin_stream, "<stdin>");
    std::ifstream file(path);
    if (!file) throw ParameterError("cannot open input file '" + path + "'");
    return read_series(file, path);
}

Innovation parse_law(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ParameterError("law '" + text + "' must look like t:3, pareto:2 or burr:lambda,beta,gamma");
    const std::string name = trim(text.substr(0, colon));
    const auto args = parse_numbers(text.substr(colon + 1), "law '" + text + "'");

    Innovation law;
    if (name == "t" && args.size() == 1) {
        law = TDistParams{args[0]};
    } else if (name == "pareto" && args.size() == 1) {
        law = ParetoParams{args[0]};
    } else if (name == "burr" && args.size() == 3) {
        law = BurrParams{args[0], args[1], args[2]};
    } else {
        throw ParameterError("unrecognised law '" + text + "'");
    }
    std::visit([](const auto& p) { p.validate(); }, law);
    return law;
}

} // namespace tailcusum
