#include "ssaug/io.hpp"

#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace ssaug {

using json = nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open dataset file: " + path);
    Dataset d;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        try {
            LabeledSeries item;
            const std::string id = rec.at("id").get<std::string>();
            const auto slash = id.find('/');
            item.subject_id = slash == std::string::npos ? id : id.substr(0, slash);
            item.trial_id = slash == std::string::npos ? "0" : id.substr(slash + 1);
            item.label = rec.at("label").get<int>();
            const auto& vals = rec.at("values");
            Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
            for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i].get<double>();
            std::optional<double> rate;
            if (rec.contains("sample_rate_hz")) rate = rec["sample_rate_hz"].get<double>();
            item.series = TimeSeries(std::move(v), rate);
            d.items.push_back(std::move(item));
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        } catch (const Error& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return d;
}

void write_dataset(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open dataset file for writing: " + path);
    for (const auto& item : d.items) {
        json rec;
        rec["id"] = item.subject_id + "/" + item.trial_id;
        rec["label"] = item.label;
        json vals = json::array();
        for (Eigen::Index i = 0; i < item.series.length(); ++i) vals.push_back(item.series.values[i]);
        rec["values"] = std::move(vals);
        if (item.series.sample_rate_hz) rec["sample_rate_hz"] = *item.series.sample_rate_hz;
        out << rec.dump() << '\n';
    }
}

TimeSeries read_series(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open series file: " + path);
    std::vector<double> vals;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        double v = 0.0;
        const char* begin = line.data() + first;
        const char* end = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(begin, end, v);
        if (ec != std::errc{} || ptr == begin)
            throw ParseError(path + ":" + std::to_string(lineno) + ": not a number: " + line);
        vals.push_back(v);
    }
    if (vals.empty()) throw ParseError(path + ": no samples");
    return TimeSeries(Eigen::Map<Eigen::VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size())));
}

void write_series(const TimeSeries& s, const std::string& path, const std::string& header) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open series file for writing: " + path);
    if (!header.empty()) out << "# " << header << '\n';
    for (Eigen::Index i = 0; i < s.length(); ++i) out << format_double(s.values[i]) << '\n';
}

std::string fidelity_to_json(const FidelityReport& r) {
    json rec;
    auto put = [&rec](const char* name, const std::optional<double>& v, const char* flag_name,
                      const std::string& flag) {
        if (v)
            rec[name] = *v;
        else
            rec[name] = nullptr;
        if (!flag.empty()) rec[flag_name] = flag;
    };
    put("delta_mean_pct", r.delta_mean_pct, "delta_mean_flag", r.delta_mean_flag);
    put("delta_std_pct", r.delta_std_pct, "delta_std_flag", r.delta_std_flag);
    put("acf_rmsd", r.acf_rmsd, "acf_flag", r.acf_rmsd_flag);
    put("dtw_norm", r.dtw_norm, "dtw_flag", r.dtw_flag);
    if (r.dtw_norm)
        rec["dtw_pct"] = 100.0 * *r.dtw_norm;
    else
        rec["dtw_pct"] = nullptr;
    return rec.dump();
}

}  // namespace ssaug
