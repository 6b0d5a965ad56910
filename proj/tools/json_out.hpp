#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace anrot::tool {

// Minimal deterministic JSON emitter. All numbers are written with 17
// significant digits so doubles round-trip exactly and reruns are
// byte-identical.
inline std::string json_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class JsonWriter {
public:
    explicit JsonWriter(std::ostream& os) : os_(os) {}

    JsonWriter& begin_object() { return open('{'); }
    JsonWriter& end_object() { return close('}'); }
    JsonWriter& begin_array() { return open('['); }
    JsonWriter& end_array() { return close(']'); }

    JsonWriter& key(const std::string& k) {
        separate();
        write_string(k);
        os_ << ':';
        pending_value_ = true;
        return *this;
    }

    JsonWriter& value(double x) { return raw(json_num(x)); }
    JsonWriter& value(long long x) { return raw(std::to_string(x)); }
    JsonWriter& value(int x) { return raw(std::to_string(x)); }
    JsonWriter& value(bool b) { return raw(b ? "true" : "false"); }
    JsonWriter& value(const std::string& s) {
        separate();
        write_string(s);
        return *this;
    }
    JsonWriter& value(const char* s) { return value(std::string(s)); }
    JsonWriter& null() { return raw("null"); }

private:
    JsonWriter& open(char c) {
        separate();
        os_ << c;
        first_.push_back(true);
        return *this;
    }
    JsonWriter& close(char c) {
        os_ << c;
        first_.pop_back();
        return *this;
    }
    JsonWriter& raw(const std::string& s) {
        separate();
        os_ << s;
        return *this;
    }
    void separate() {
        if (pending_value_) {
            pending_value_ = false;
            return;
        }
        if (!first_.empty()) {
            if (!first_.back()) os_ << ',';
            first_.back() = false;
        }
    }
    void write_string(const std::string& s) {
        os_ << '"';
        for (char c : s) {
            switch (c) {
                case '"': os_ << "\\\""; break;
                case '\\': os_ << "\\\\"; break;
                case '\n': os_ << "\\n"; break;
                case '\t': os_ << "\\t"; break;
                default: os_ << c;
            }
        }
        os_ << '"';
    }

    std::ostream& os_;
    std::vector<bool> first_;
    bool pending_value_ = false;
};

}  // namespace anrot::tool
