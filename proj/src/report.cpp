#include "greedylab/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "greedylab/errors.hpp"

namespace greedylab {

namespace {

Json num(double v) {
    if (std::isinf(v)) return nullptr;
    return v;
}

// shortest round-trip decimal, shared by every text format
std::string fmt_num(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return Json(v).dump();
}

std::string status_name(CertificateStatus s) {
    switch (s) {
        case CertificateStatus::Holds: return "holds";
        case CertificateStatus::Violated: return "violated";
        case CertificateStatus::Equality: return "equality";
    }
    return "unknown";
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string md_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '|') out += "\\|";
        else if (c == '\n') out += ' ';
        else out += c;
    }
    return out;
}

Json witness_json(const ConstantWitness& w) {
    Json j = Json::object();
    if (w.x) j["x"] = to_json(*w.x);
    if (w.A) j["A"] = to_json(*w.A);
    if (w.B) j["B"] = to_json(*w.B);
    if (w.eps) j["eps"] = to_json(*w.eps);
    if (w.eta) j["eta"] = to_json(*w.eta);
    if (!w.description.empty()) j["description"] = w.description;
    return j;
}

}  // namespace

Json to_json(const CoeffVector& x) {
    Json j;
    j["field"] = x.field() == FieldTag::Real ? "real" : "complex";
    Json vals = Json::array();
    for (const auto& c : x.raw()) {
        if (x.field() == FieldTag::Real) {
            vals.push_back(c.real());
        } else {
            vals.push_back(Json::array({c.real(), c.imag()}));
        }
    }
    j["coords"] = std::move(vals);
    return j;
}

Json to_json(const IndexSet& s) {
    return Json(s.labels());
}

Json to_json(const SignPattern& p) {
    Json j = Json::array();
    for (const auto& [label, value] : p.entries()) {
        if (p.is_real()) {
            j.push_back(Json::array({label, value.real()}));
        } else {
            j.push_back(Json::array({label, value.real(), value.imag()}));
        }
    }
    return j;
}

Json to_json(const ConstantEstimate& e) {
    Json j;
    j["kind"] = to_string(e.kind);
    j["N"] = e.N;
    j["lower"] = num(e.lower);
    j["upper"] = num(e.upper);
    j["exact"] = e.exact();
    Json w = witness_json(e.witness);
    if (!w.empty()) j["witness"] = std::move(w);
    j["citations"] = e.citations;
    return j;
}

Json to_json(const BoundCertificate& c) {
    Json j;
    j["name"] = c.name;
    j["lhs"] = num(c.lhs);
    j["rhs"] = num(c.rhs);
    j["status"] = status_name(c.status);
    if (!c.detail.empty()) j["detail"] = c.detail;
    return j;
}

int Report::exact_count() const {
    int n = 0;
    for (const auto& e : constants) n += e.exact() ? 1 : 0;
    return n;
}

int Report::violated_count() const {
    int n = 0;
    for (const auto& c : certificates) n += c.status == CertificateStatus::Violated ? 1 : 0;
    for (const auto& s : sandwiches) {
        for (const auto& c : s.upper.certificates)
            n += c.status == CertificateStatus::Violated ? 1 : 0;
        n += s.consistent() ? 0 : 1;
    }
    return n;
}

Json Report::to_json() const {
    Json j;
    j["version"] = kVersion;
    j["space"] = Json{{"name", space_name},
                      {"dim", dim},
                      {"field", field == FieldTag::Real ? "real" : "complex"}};
    j["seed"] = seed;
    Json cs = Json::array();
    for (const auto& e : constants) cs.push_back(greedylab::to_json(e));
    j["constants"] = std::move(cs);
    Json certs = Json::array();
    for (const auto& c : certificates) certs.push_back(greedylab::to_json(c));
    j["certificates"] = std::move(certs);
    Json sw = Json::array();
    for (const auto& s : sandwiches) {
        Json e;
        e["N"] = s.N;
        e["L"] = Json{{"lower", num(s.lower.L)},
                      {"upper", num(s.upper.L)},
                      {"lower_witness", s.lower.L_witness}};
        e["L_tilde"] = Json{{"lower", num(s.lower.L_tilde)},
                            {"upper", num(s.upper.L_tilde)},
                            {"lower_witness", s.lower.L_tilde_witness}};
        e["exact_by_suppression"] = s.upper.exact_by_suppression;
        e["consistent"] = s.consistent();
        Json uc = Json::array();
        for (const auto& c : s.upper.certificates) uc.push_back(greedylab::to_json(c));
        e["certificates"] = std::move(uc);
        sw.push_back(std::move(e));
    }
    j["sandwiches"] = std::move(sw);
    j["notes"] = notes;
    j["summary"] = Json{{"exact_count", exact_count()}, {"violated_count", violated_count()}};
    return j;
}

std::string Report::to_csv() const {
    std::ostringstream out;
    out << "kind,N,lower,upper,exact,citation\n";
    for (const auto& e : constants) {
        std::string citation;
        for (const auto& c : e.citations) {
            if (!citation.empty()) citation += "; ";
            citation += c;
        }
        out << to_string(e.kind) << ',' << e.N << ',' << fmt_num(e.lower) << ','
            << fmt_num(e.upper) << ',' << (e.exact() ? "true" : "false") << ','
            << csv_field(citation) << '\n';
    }
    return out.str();
}

std::string Report::to_markdown() const {
    std::ostringstream out;
    out << "# " << space_name << "\n\n";
    out << "dim " << dim << ", " << (field == FieldTag::Real ? "real" : "complex")
        << " scalars, seed " << seed << ", version " << kVersion << "\n";
    if (!constants.empty()) {
        out << "\n## Constants\n\n";
        out << "| kind | N | lower | upper | exact |\n";
        out << "|---|---|---|---|---|\n";
        for (const auto& e : constants) {
            out << "| " << to_string(e.kind) << " | " << e.N << " | " << fmt_num(e.lower)
                << " | " << fmt_num(e.upper) << " | " << (e.exact() ? "yes" : "no") << " |\n";
        }
    }
    if (!sandwiches.empty()) {
        out << "\n## Lebesgue bounds\n\n";
        out << "| N | L lower | L upper | L~ lower | L~ upper | consistent |\n";
        out << "|---|---|---|---|---|---|\n";
        for (const auto& s : sandwiches) {
            out << "| " << s.N << " | " << fmt_num(s.lower.L) << " | " << fmt_num(s.upper.L)
                << " | " << fmt_num(s.lower.L_tilde) << " | " << fmt_num(s.upper.L_tilde)
                << " | " << (s.consistent() ? "yes" : "no") << " |\n";
        }
    }
    if (!certificates.empty()) {
        out << "\n## Certificates\n\n";
        out << "| name | lhs | rhs | status |\n";
        out << "|---|---|---|---|\n";
        for (const auto& c : certificates) {
            out << "| " << md_escape(c.name) << " | " << fmt_num(c.lhs) << " | "
                << fmt_num(c.rhs) << " | " << status_name(c.status) << " |\n";
        }
    }
    if (!notes.empty()) {
        out << "\n## Notes\n\n";
        for (const auto& n : notes) out << "- " << n << "\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open " + path + " for writing");
    f << content;
    if (!f) throw DomainError("write to " + path + " failed");
}

}  // namespace greedylab
