#include "random_program.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace pqc::testing {

namespace {

struct Live {
    std::string name;
    bool qubit = true;
};

class Generator {
public:
    Generator(std::mt19937_64& rng, const RandomProgramOptions& opts) : rng_(rng), opts_(opts) {}

    std::size_t choose_inputs() { return pick(1, opts_.max_wires < 3 ? opts_.max_wires : 3); }

    std::string run() {
        const std::size_t inputs = choose_inputs();
        out_ << header(inputs);
        for (std::size_t i = 0; i < inputs; ++i) {
            const std::string v = fresh();
            out_ << "let " << v << " = return #" << i << " in\n";
            live_.push_back({v, true});
        }
        body();
        return out_.str();
    }

    RandomFunction run_function() {
        RandomFunction f;
        f.inputs = choose_inputs();
        f.header = header(f.inputs);
        std::vector<std::string> names;
        for (std::size_t i = 0; i < f.inputs; ++i) {
            names.push_back(fresh());
            live_.push_back({names.back(), true});
            f.param_type += (i ? " * Qubit" : "Qubit");
            f.args += (i ? ", #" : "#") + std::to_string(i);
        }
        if (f.inputs > 1) f.args = "(" + f.args + ")";
        const std::string p = "p";
        out_ << "\\" << p << ":" << f.param_type << ". ";
        if (f.inputs == 1) {
            out_ << "let " << names[0] << " = return " << p << " in\n";
        } else {
            out_ << "let (";
            for (std::size_t i = 0; i < names.size(); ++i) out_ << (i ? ", " : "") << names[i];
            out_ << ") = " << p << " in\n";
        }
        body();
        f.lambda = out_.str();
        return f;
    }

private:
    std::size_t pick(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }

    std::string fresh() { return "v" + std::to_string(next_++); }

    std::vector<std::size_t> qubits() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < live_.size(); ++i)
            if (live_[i].qubit) out.push_back(i);
        return out;
    }

    std::string take(std::size_t i) {
        std::string n = live_[i].name;
        live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(i));
        return n;
    }

    /// Removes two distinct live qubits, returning their names.
    std::pair<std::string, std::string> take_two() {
        auto qs = qubits();
        const std::size_t a = qs[pick(0, qs.size() - 1)];
        qs.erase(std::find(qs.begin(), qs.end(), a));
        const std::size_t b = qs[pick(0, qs.size() - 1)];
        std::string na = live_[a].name;
        std::string nb = live_[b].name;
        take(a > b ? a : b);
        take(a > b ? b : a);
        return {na, nb};
    }

    std::string take_qubit() {
        const auto qs = qubits();
        return take(qs[pick(0, qs.size() - 1)]);
    }

    std::string one_qubit_gate() {
        static const char* const names[] = {"H", "X", "Z"};
        return names[pick(0, 2)];
    }

    static std::string header(std::size_t inputs) {
        std::string h = "inputs ";
        for (std::size_t i = 0; i < inputs; ++i) h += (i ? ", #" : "#") + std::to_string(i) + " : Qubit";
        return h + ";\n";
    }

    void body() {
        const std::size_t steps = pick(0, opts_.max_steps);
        for (std::size_t s = 0; s < steps; ++s) step();
        out_ << "return " << result();
    }

    void step() {
        const std::size_t nq = qubits().size();
        const std::size_t kinds = opts_.first_order ? 6 : 12;
        for (int attempt = 0; attempt < 8; ++attempt) {
            switch (pick(0, kinds - 1)) {
            case 0:
            case 1:
                if (nq < 1) break;
                gate1();
                return;
            case 2:
                if (nq < 2) break;
                cnot();
                return;
            case 3:
                if (opts_.qubits_only || nq < 1) break;
                meas();
                return;
            case 4:
                if (live_.size() >= opts_.max_wires) break;
                init();
                return;
            case 5:
                if (nq < 1 || live_.size() < 2) break;
                discard();
                return;
            case 6:
                if (nq < 1) break;
                closure();
                return;
            case 7:
                if (nq < 1) break;
                box_apply();
                return;
            case 8:
                if (nq < 1) break;
                lift_force();
                return;
            case 9:
                if (live_.size() < 2) break;
                pair_dest();
                return;
            case 10:
                if (nq < 1) break;
                branch();
                return;
            case 11:
                if (nq < 2) break;
                box_cnot();
                return;
            }
        }
    }

    void gate1() {
        const std::string x = take_qubit();
        const std::string v = fresh();
        out_ << "let " << v << " = apply(@" << one_qubit_gate() << ", " << x << ") in\n";
        live_.push_back({v, true});
    }

    void cnot() {
        auto [a, b] = take_two();
        const std::string c = fresh();
        const std::string t = fresh();
        out_ << "let (" << c << ", " << t << ") = apply(@CNOT, (" << a << ", " << b << ")) in\n";
        live_.push_back({c, true});
        live_.push_back({t, true});
    }

    void meas() {
        const std::string x = take_qubit();
        const std::string v = fresh();
        out_ << "let " << v << " = apply(@meas, " << x << ") in\n";
        live_.push_back({v, false});
    }

    void init() {
        const std::string v = fresh();
        out_ << "let " << v << " = apply(@init, *) in\n";
        live_.push_back({v, true});
    }

    void discard() {
        const std::string x = take_qubit();
        out_ << "let " << fresh() << " = apply(@discard, " << x << ") in\n";
    }

    /// A λ applied to one qubit, optionally capturing another.
    void closure() {
        const std::string f = fresh();
        const std::string p = fresh();
        const std::string r = fresh();
        if (qubits().size() >= 2 && pick(0, 1) == 1) {
            auto [x, y] = take_two();
            const std::string a = fresh();
            const std::string b = fresh();
            out_ << "let " << f << " = return (\\" << p << ":Qubit. apply(@CNOT, (" << p << ", " << y
                 << "))) in\n";
            out_ << "let (" << a << ", " << b << ") = " << f << " " << x << " in\n";
            live_.push_back({a, true});
            live_.push_back({b, true});
            return;
        }
        const std::string x = take_qubit();
        out_ << "let " << f << " = return (\\" << p << ":Qubit. apply(@" << one_qubit_gate() << ", " << p
             << ")) in\n";
        out_ << "let " << r << " = " << f << " " << x << " in\n";
        live_.push_back({r, true});
    }

    void box_apply() {
        const std::string c = fresh();
        const std::string p = fresh();
        const std::string q = fresh();
        const std::string x = take_qubit();
        const std::string r = fresh();
        out_ << "let " << c << " = box[Qubit] (\\" << p << ":Qubit. let " << q << " = apply(@"
             << one_qubit_gate() << ", " << p << ") in apply(@" << one_qubit_gate() << ", " << q << ")) in\n";
        out_ << "let " << r << " = apply(" << c << ", " << x << ") in\n";
        live_.push_back({r, true});
    }

    void box_cnot() {
        const std::string c = fresh();
        const std::string p = fresh();
        const std::string a = fresh();
        const std::string b = fresh();
        auto [x, y] = take_two();
        const std::string r1 = fresh();
        const std::string r2 = fresh();
        out_ << "let " << c << " = box[Qubit * Qubit] (\\" << p << ":Qubit * Qubit. let (" << a << ", " << b
             << ") = " << p << " in apply(@CNOT, (" << b << ", " << a << "))) in\n";
        out_ << "let (" << r1 << ", " << r2 << ") = apply(" << c << ", (" << x << ", " << y << ")) in\n";
        live_.push_back({r1, true});
        live_.push_back({r2, true});
    }

    void lift_force() {
        const std::string t = fresh();
        const std::string g = fresh();
        const std::string p = fresh();
        const std::string x = take_qubit();
        const std::string r = fresh();
        out_ << "let " << t << " = return (lift return (\\" << p << ":Qubit. apply(@" << one_qubit_gate() << ", "
             << p << "))) in\n";
        out_ << "let " << g << " = force " << t << " in\n";
        out_ << "let " << r << " = " << g << " " << x << " in\n";
        live_.push_back({r, true});
    }

    void pair_dest() {
        const std::size_t i = pick(0, live_.size() - 1);
        const Live a = live_[i];
        take(i);
        const std::size_t j = pick(0, live_.size() - 1);
        const Live b = live_[j];
        take(j);
        const std::string pr = fresh();
        const std::string x = fresh();
        const std::string y = fresh();
        out_ << "let " << pr << " = return (" << a.name << ", " << b.name << ") in\n";
        out_ << "let (" << x << ", " << y << ") = " << pr << " in\n";
        live_.push_back({y, b.qubit});
        live_.push_back({x, a.qubit});
    }

    void branch() {
        const std::string x = take_qubit();
        const std::string r = fresh();
        const std::string tmp = fresh();
        out_ << "let " << r << " = ifz " << pick(0, 1) << " then apply(@" << one_qubit_gate() << ", " << x
             << ") else let " << tmp << " = apply(@" << one_qubit_gate() << ", " << x << ") in apply(@"
             << one_qubit_gate() << ", " << tmp << ") in\n";
        live_.push_back({r, true});
    }

    std::string result() const {
        if (live_.empty()) return "*";
        if (live_.size() == 1) return live_[0].name;
        std::string s = "(";
        for (std::size_t i = 0; i < live_.size(); ++i) s += (i ? ", " : "") + live_[i].name;
        return s + ")";
    }

    std::mt19937_64& rng_;
    RandomProgramOptions opts_;
    std::ostringstream out_;
    std::vector<Live> live_;
    std::size_t next_ = 0;
};

} // namespace

std::string random_program(std::mt19937_64& rng, const RandomProgramOptions& opts) {
    return Generator(rng, opts).run() + "\n";
}

RandomFunction random_function(std::mt19937_64& rng, const RandomProgramOptions& opts) {
    return Generator(rng, opts).run_function();
}

std::string RandomFunction::boxed_program() const {
    return header + "let c = box[" + param_type + "] (" + lambda + ") in\napply(c, " + args + ")\n";
}

std::string RandomFunction::direct_program() const {
    return header + "let f = return (" + lambda + ") in\nf " + args + "\n";
}

} // namespace pqc::testing
