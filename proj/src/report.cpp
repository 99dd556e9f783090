#include "mag/report.hpp"

#include <json.hpp>

#include <sstream>

namespace mag {

namespace {

using Json = nlohmann::ordered_json;

struct SurfaceTask {
    std::string name;
    const SurfaceMap* surface;
    std::optional<std::string> with_integral;
};

struct Plan {
    bool characteristics = false;
    bool flags = false;
    bool hypotheses = false;
    std::vector<std::string> integrals;
    std::vector<SurfaceTask> surfaces;
    std::vector<std::string> normal_forms;
};

const ScalarExpr* find_integral(const SystemSpec& spec, const std::string& name) {
    for (const auto& [n, e] : spec.integrals)
        if (n == name)
            return &e;
    return nullptr;
}

const SurfaceMap* find_surface(const SystemSpec& spec, const std::string& name) {
    for (const auto& [n, s] : spec.surfaces)
        if (n == name)
            return &s;
    return nullptr;
}

const NormalFormData* find_normal_form(const SystemSpec& spec, const std::string& name) {
    for (const auto& [n, f] : spec.normal_forms)
        if (n == name)
            return &f;
    return nullptr;
}

// `with` binding for a surface: the check line's choice, else the only
// declared integral, else none.
std::optional<std::string> default_with(const SystemSpec& spec, const std::string& surface_name) {
    for (const auto& c : spec.checks)
        if (c.kind == CheckRequest::Kind::Surface && c.name == surface_name && c.with_integral)
            return c.with_integral;
    if (spec.integrals.size() == 1)
        return spec.integrals.front().first;
    return std::nullopt;
}

Plan make_plan(const SystemSpec& spec, const std::string& subcommand) {
    Plan plan;
    auto add_integral = [&](const std::string& n) {
        for (const auto& existing : plan.integrals)
            if (existing == n)
                return;
        plan.integrals.push_back(n);
    };
    auto add_surface = [&](const std::string& n, std::optional<std::string> with) {
        for (const auto& existing : plan.surfaces)
            if (existing.name == n)
                return;
        plan.surfaces.push_back(SurfaceTask{n, find_surface(spec, n), std::move(with)});
    };

    if (subcommand == "classify") {
        return plan;
    }
    if (subcommand == "characteristics") {
        plan.characteristics = true;
        return plan;
    }
    if (subcommand == "derived-flag") {
        plan.characteristics = plan.flags = true;
        return plan;
    }
    if (subcommand == "hypotheses") {
        plan.characteristics = plan.hypotheses = true;
        return plan;
    }
    if (subcommand == "check-integral") {
        plan.characteristics = true;
        for (const auto& [n, e] : spec.integrals) {
            (void)e;
            add_integral(n);
        }
        return plan;
    }
    if (subcommand == "check-surface") {
        plan.characteristics = !spec.integrals.empty();
        for (const auto& [n, s] : spec.surfaces) {
            (void)s;
            add_surface(n, default_with(spec, n));
        }
        return plan;
    }
    if (subcommand == "normal-form") {
        plan.characteristics = true;
        for (const auto& [n, f] : spec.normal_forms) {
            (void)f;
            plan.normal_forms.push_back(n);
        }
        return plan;
    }

    // report: honor the document's check list
    for (const auto& c : spec.checks) {
        switch (c.kind) {
        case CheckRequest::Kind::Classify:
            break;
        case CheckRequest::Kind::Characteristics:
            plan.characteristics = true;
            break;
        case CheckRequest::Kind::DerivedFlag:
            plan.characteristics = plan.flags = true;
            break;
        case CheckRequest::Kind::Hypotheses:
            plan.characteristics = plan.hypotheses = true;
            break;
        case CheckRequest::Kind::Integral:
            plan.characteristics = true;
            add_integral(c.name);
            break;
        case CheckRequest::Kind::Surface:
            if (c.with_integral)
                plan.characteristics = true;
            add_surface(c.name, c.with_integral ? c.with_integral : default_with(spec, c.name));
            break;
        case CheckRequest::Kind::NormalForm:
            plan.characteristics = true;
            plan.normal_forms.push_back(c.name);
            break;
        }
    }
    return plan;
}

class Runner {
public:
    Runner(const SystemSpec& spec, const RunOptions& opt) : spec_(spec), opt_(opt) {
        if (opt.sample > 0)
            sampler_.emplace(opt.seed, opt.sample);
    }

    RunResult run();

private:
    const SystemSpec& spec_;
    const RunOptions& opt_;
    Notes warnings_;
    std::optional<Sampler> sampler_;
    std::optional<MongeAmpereSystem> system_;
    std::optional<Classification> classification_;
    std::vector<CharacteristicSystem> chars_;
    bool chars_available_ = false;
    // first accepted certificate per integral name, with its system index
    std::map<std::string, std::pair<std::size_t, IntegralCertificate>> certificates_;

    bool negative_ = false;
    bool unsupported_ = false;
    std::string unsupported_msg_;

    Json report_ = Json::object();

    Sampler* sampler() { return sampler_ ? &*sampler_ : nullptr; }

    void build_system();
    void run_classification();
    void run_characteristics();
    void run_flags();
    void run_hypotheses();
    void run_integrals(const std::vector<std::string>& names);
    void run_surfaces(const std::vector<SurfaceTask>& tasks);
    void run_normal_forms(const std::vector<std::string>& names);
    std::string render_text() const;
};

void Runner::build_system() {
    if (spec_.equation_mode)
        system_ = MongeAmpereSystem::from_equation(*spec_.coefficients, &warnings_, sampler());
    else
        system_ = MongeAmpereSystem::from_forms(*spec_.theta, *spec_.omega, &warnings_, sampler());
}

void Runner::run_classification() {
    classification_ = classify(*system_, &warnings_);
    Json c;
    c["kind"] = to_string(classification_->kind);
    c["c2"] = to_string(classification_->c2);
    c["c1"] = to_string(classification_->c1);
    c["c0"] = to_string(classification_->c0);
    c["discriminant"] = to_string(classification_->discriminant);
    Json roots = Json::array();
    for (const auto& r : classification_->roots)
        roots.push_back(to_string(r));
    c["roots"] = roots;
    report_["classification"] = c;
}

void Runner::run_characteristics() {
    try {
        chars_ = characteristic_systems(*system_, &warnings_);
        chars_available_ = true;
    } catch (const UnsupportedError& e) {
        unsupported_ = true;
        unsupported_msg_ = e.what();
        warnings_.add(std::string("characteristics unavailable: ") + e.what());
        return;
    }
    Json arr = Json::array();
    for (const auto& cs : chars_) {
        Json c;
        c["lambda"] = to_string(cs.lambda);
        c["omega1"] = to_string(cs.omega1);
        c["omega2"] = to_string(cs.omega2);
        Json gens = Json::array();
        for (const auto& g : cs.J.generators())
            gens.push_back(to_string(g));
        c["J"] = gens;
        arr.push_back(c);
    }
    report_["characteristics"] = arr;
}

void Runner::run_flags() {
    if (!chars_available_)
        return;
    Json arr = Json::array();
    for (const auto& cs : chars_) {
        DerivedFlag flag = derived_flag(cs.J, &warnings_);
        Json f;
        f["dims"] = flag.dims;
        Json final_gens = Json::array();
        for (const auto& g : flag.systems.back().generators())
            final_gens.push_back(to_string(g));
        f["final"] = final_gens;
        arr.push_back(f);
    }
    report_["flags"] = arr;
}

void Runner::run_hypotheses() {
    if (!chars_available_)
        return;
    Json arr = Json::array();
    for (const auto& cs : chars_) {
        HypothesisReport h = check_theorem_hypotheses(*system_, cs, &warnings_, sampler());
        Json j;
        j["integrable"] = h.integrable;
        j["assumption1"] = h.assumption1;
        j["assumption2"] = h.assumption2;
        j["verdict"] = h.verdict;
        arr.push_back(j);
    }
    report_["hypotheses"] = arr;
}

void Runner::run_integrals(const std::vector<std::string>& names) {
    if (names.empty())
        return;
    if (!chars_available_)
        return;
    Json arr = Json::array();
    for (const auto& name : names) {
        const ScalarExpr* F = find_integral(spec_, name);
        if (!F)
            throw DomainError("undeclared integral '" + name + "'");
        Json entry;
        entry["name"] = name;
        IntegralOutcome last_outcome;
        bool accepted = false;
        try {
            for (std::size_t i = 0; i < chars_.size() && !accepted; ++i) {
                IntegralOutcome out =
                    verify_intermediate_integral(*system_, chars_[i], *F, &warnings_, sampler());
                if (out.accepted) {
                    accepted = true;
                    certificates_.emplace(name, std::make_pair(i, out.certificate));
                    entry["a"] = to_string(out.certificate.a);
                    entry["b"] = to_string(out.certificate.b);
                    entry["c"] = to_string(out.certificate.c);
                    entry["in_last_derived"] = out.certificate.in_last_derived;
                    entry["system"] = i;
                    entry["note"] = out.certificate.all_zero_note;
                } else {
                    last_outcome = std::move(out);
                }
            }
        } catch (const DomainError& e) {
            warnings_.add("integral " + name + ": " + e.what());
        }
        if (!accepted) {
            negative_ = true;
            entry["a"] = nullptr;
            entry["b"] = nullptr;
            entry["c"] = nullptr;
            entry["in_last_derived"] = false;
            Json residual = Json::array();
            for (const auto& [slot, coeff] : last_outcome.residual) {
                Json r;
                r["on"] = slot;
                r["coefficient"] = to_string(coeff);
                residual.push_back(r);
            }
            entry["residual"] = residual;
            warnings_.add("integral " + name + ": dF is not contained in any characteristic system");
        }
        arr.push_back(entry);
    }
    report_["integrals"] = arr;
}

void Runner::run_surfaces(const std::vector<SurfaceTask>& tasks) {
    if (tasks.empty())
        return;
    Json arr = Json::array();
    for (const auto& task : tasks) {
        if (!task.surface)
            throw DomainError("undeclared surface '" + task.name + "'");
        const ScalarExpr* F = nullptr;
        const CharacteristicSystem* cs = nullptr;
        const IntegralCertificate* cert = nullptr;
        if (task.with_integral) {
            F = find_integral(spec_, *task.with_integral);
            if (!F)
                throw DomainError("undeclared integral '" + *task.with_integral + "'");
            if (chars_available_) {
                auto it = certificates_.find(*task.with_integral);
                if (it == certificates_.end()) {
                    for (std::size_t i = 0; i < chars_.size(); ++i) {
                        IntegralOutcome out =
                            verify_intermediate_integral(*system_, chars_[i], *F, nullptr, nullptr);
                        if (out.accepted) {
                            it = certificates_.emplace(*task.with_integral,
                                                       std::make_pair(i, out.certificate))
                                     .first;
                            break;
                        }
                    }
                }
                if (it != certificates_.end()) {
                    cs = &chars_[it->second.first];
                    cert = &it->second.second;
                }
            }
        }
        ExceptionalReport r = check_surface(*system_, *task.surface,
                                            F ? std::optional<ScalarExpr>(*F) : std::nullopt, cs, cert);
        Json entry;
        entry["name"] = task.name;
        entry["verdict"] = to_string(r.verdict);
        entry["pulled_theta"] = to_string(r.pulled_theta);
        entry["pulled_omega"] = to_string(r.pulled_omega);
        entry["independence"] = to_string(r.independence);
        if (r.pulled_F)
            entry["pulled_F"] = to_string(*r.pulled_F);
        if (r.pulled_b) {
            entry["pulled_b"] = to_string(*r.pulled_b);
            entry["pulled_c"] = to_string(*r.pulled_c);
        }
        arr.push_back(entry);
        if (r.verdict != SurfaceVerdict::Solution) {
            negative_ = true;
            warnings_.add("surface " + task.name + ": verdict " + to_string(r.verdict));
        }
    }
    report_["surfaces"] = arr;
}

void Runner::run_normal_forms(const std::vector<std::string>& names) {
    if (names.empty())
        return;
    Json arr = Json::array();
    const PfaffianSystem* j = nullptr;
    for (const auto& cs : chars_)
        if (is_integrable(cs.J)) {
            j = &cs.J;
            break;
        }
    if (!j) {
        unsupported_ = true;
        unsupported_msg_ = chars_available_
                               ? "normal form requires an integrable characteristic system"
                               : unsupported_msg_;
        warnings_.add("normal form skipped: no integrable characteristic system");
        report_["normal_forms"] = arr;
        return;
    }
    for (const auto& name : names) {
        const NormalFormData* nf = find_normal_form(spec_, name);
        if (!nf)
            throw DomainError("undeclared normal form '" + name + "'");
        Json entry;
        entry["name"] = name;
        try {
            NormalFormResult r = verify_normal_form(system_->theta(), *j, *nf);
            entry["verified"] = true;
            entry["mu"] = to_string(r.mu);
            entry["f_z"] = to_string(r.f_z);
            Json coords;
            coords["x"] = to_string(r.new_x);
            coords["y"] = to_string(r.new_y);
            coords["z"] = to_string(r.new_z);
            coords["p"] = to_string(r.new_p);
            coords["q"] = to_string(r.new_q);
            entry["new_coordinates"] = coords;
            Json eqs = Json::array();
            for (const auto& e : r.exceptional_equations)
                eqs.push_back(to_string(e));
            entry["exceptional_equations"] = eqs;
        } catch (const UnsupportedError& e) {
            unsupported_ = true;
            unsupported_msg_ = e.what();
            entry["verified"] = false;
            entry["error"] = e.what();
        } catch (const Error& e) {
            negative_ = true;
            entry["verified"] = false;
            entry["error"] = e.what();
            warnings_.add("normal form " + name + ": " + e.what());
        }
        arr.push_back(entry);
    }
    report_["normal_forms"] = arr;
}

std::string Runner::render_text() const {
    std::ostringstream out;
    out << "system: " << spec_.name << "\n";
    if (report_.contains("classification")) {
        const auto& c = report_["classification"];
        out << "classification: " << c["kind"].get<std::string>() << "\n";
        out << "  quadratic: c2 = " << c["c2"].get<std::string>() << ", c1 = "
            << c["c1"].get<std::string>() << ", c0 = " << c["c0"].get<std::string>() << "\n";
        out << "  discriminant: " << c["discriminant"].get<std::string>() << "\n";
        if (!c["roots"].empty()) {
            out << "  roots:";
            for (const auto& r : c["roots"])
                out << " " << r.get<std::string>();
            out << "\n";
        }
    }
    if (report_.contains("characteristics")) {
        std::size_t i = 0;
        for (const auto& cs : report_["characteristics"]) {
            out << "characteristic system [" << i++ << "]: lambda = "
                << cs["lambda"].get<std::string>() << "\n";
            out << "  omega1 = " << cs["omega1"].get<std::string>() << "\n";
            out << "  omega2 = " << cs["omega2"].get<std::string>() << "\n";
            out << "  J = {";
            bool first = true;
            for (const auto& g : cs["J"]) {
                out << (first ? "" : ", ") << g.get<std::string>();
                first = false;
            }
            out << "}\n";
        }
    }
    if (report_.contains("flags")) {
        std::size_t i = 0;
        for (const auto& f : report_["flags"]) {
            out << "derived flag [" << i++ << "]: dims";
            for (const auto& d : f["dims"])
                out << " " << d.get<std::size_t>();
            out << "; final = {";
            bool first = true;
            for (const auto& g : f["final"]) {
                out << (first ? "" : ", ") << g.get<std::string>();
                first = false;
            }
            out << "}\n";
        }
    }
    if (report_.contains("hypotheses")) {
        std::size_t i = 0;
        for (const auto& h : report_["hypotheses"]) {
            out << "hypotheses [" << i++ << "]: integrable = "
                << (h["integrable"].get<bool>() ? "yes" : "no")
                << ", assumption1 = " << (h["assumption1"].get<bool>() ? "yes" : "no")
                << ", assumption2 = " << (h["assumption2"].get<bool>() ? "yes" : "no") << "\n";
            out << "  verdict: " << h["verdict"].get<std::string>() << "\n";
        }
    }
    if (report_.contains("integrals")) {
        for (const auto& e : report_["integrals"]) {
            out << "integral " << e["name"].get<std::string>() << ": ";
            if (e["a"].is_null()) {
                out << "refused";
                if (e.contains("residual") && !e["residual"].empty()) {
                    out << " (residual on";
                    for (const auto& r : e["residual"])
                        out << " " << r["on"].get<std::string>();
                    out << ")";
                }
                out << "\n";
            } else {
                out << "dF = (" << e["a"].get<std::string>() << ") theta + ("
                    << e["b"].get<std::string>() << ") omega1 + (" << e["c"].get<std::string>()
                    << ") omega2; in last derived system: "
                    << (e["in_last_derived"].get<bool>() ? "yes" : "no") << "\n";
            }
        }
    }
    if (report_.contains("surfaces")) {
        for (const auto& e : report_["surfaces"]) {
            out << "surface " << e["name"].get<std::string>() << ": verdict "
                << e["verdict"].get<std::string>() << "\n";
            out << "  i*theta = " << e["pulled_theta"].get<std::string>() << "\n";
            out << "  i*Omega = " << e["pulled_omega"].get<std::string>() << "\n";
            out << "  i*(dx/\\dy) = " << e["independence"].get<std::string>() << "\n";
            if (e.contains("pulled_F"))
                out << "  F o i = " << e["pulled_F"].get<std::string>() << "\n";
            if (e.contains("pulled_b"))
                out << "  i*b = " << e["pulled_b"].get<std::string>() << ", i*c = "
                    << e["pulled_c"].get<std::string>() << "\n";
        }
    }
    if (report_.contains("normal_forms")) {
        for (const auto& e : report_["normal_forms"]) {
            out << "normal form " << e["name"].get<std::string>() << ": ";
            if (e["verified"].get<bool>()) {
                out << "verified; mu = " << e["mu"].get<std::string>() << ", F_Z = "
                    << e["f_z"].get<std::string>() << "\n";
                out << "  exceptional equations:";
                for (const auto& eq : e["exceptional_equations"])
                    out << " (" << eq.get<std::string>() << ") = 0";
                out << "\n";
            } else {
                out << "failed: " << e["error"].get<std::string>() << "\n";
            }
        }
    }
    for (const auto& w : report_["warnings"])
        out << "warning: " << w.get<std::string>() << "\n";
    return out.str();
}

RunResult Runner::run() {
    RunResult result;
    report_["system"] = spec_.name;
    try {
        build_system();
    } catch (const Error& e) {
        result.exit_code = 3;
        result.diagnostics = std::string("invalid system: ") + e.what() + "\n";
        return result;
    }

    Plan plan = make_plan(spec_, opt_.subcommand);
    run_classification();
    if (plan.characteristics || plan.flags || plan.hypotheses || !plan.integrals.empty() ||
        !plan.normal_forms.empty())
        run_characteristics();
    if (plan.flags)
        run_flags();
    if (plan.hypotheses)
        run_hypotheses();
    run_integrals(plan.integrals);
    run_surfaces(plan.surfaces);
    run_normal_forms(plan.normal_forms);

    report_["warnings"] = warnings_.items;

    if (unsupported_) {
        result.exit_code = 3;
        result.diagnostics = "unsupported: " + unsupported_msg_ + "\n";
    } else if (negative_) {
        result.exit_code = 1;
    }
    result.output = opt_.json ? report_.dump(2) + "\n" : render_text();
    return result;
}

} // namespace

RunResult run_analysis(const SystemSpec& spec, const RunOptions& opt) {
    Runner runner(spec, opt);
    return runner.run();
}

RunResult run_document(const std::string& text, const RunOptions& opt) {
    SystemSpec spec;
    try {
        spec = parse_system_file(text);
    } catch (const ParseError& e) {
        RunResult r;
        r.exit_code = 2;
        r.diagnostics = std::string(e.what()) + "\n";
        return r;
    }
    return run_analysis(spec, opt);
}

} // namespace mag
