#include "anrot/log.hpp"

#include <atomic>
#include <cstdio>

namespace anrot {

namespace {

void default_handler(const std::string& message) {
    std::fprintf(stderr, "[anrot] warning: %s\n", message.c_str());
}

std::atomic<WarnHandler> g_handler{&default_handler};

}  // namespace

void set_warn_handler(WarnHandler handler) {
    g_handler.store(handler ? handler : &default_handler);
}

void warn(const std::string& message) {
    g_handler.load()(message);
}

}  // namespace anrot
