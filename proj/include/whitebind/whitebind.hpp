#pragma once

#include "whitebind/errors.hpp"
#include "whitebind/word.hpp"
#include "whitebind/automorphism.hpp"
#include "whitebind/witness_json.hpp"
#include "whitebind/whitehead_graph.hpp"
#include "whitebind/separability.hpp"
#include "whitebind/verdict_json.hpp"
#include "whitebind/handlebody.hpp"
