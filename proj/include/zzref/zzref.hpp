#pragma once

#include <zzref/bipartite_matching.hpp>
#include <zzref/bottleneck.hpp>
#include <zzref/decompose.hpp>
#include <zzref/error.hpp>
#include <zzref/experiment.hpp>
#include <zzref/io.hpp>
#include <zzref/linalg.hpp>
#include <zzref/matching_lemma.hpp>
#include <zzref/orientation.hpp>
#include <zzref/persistence_diagram.hpp>
#include <zzref/random.hpp>
#include <zzref/reflection.hpp>
#include <zzref/reflection_distance.hpp>
#include <zzref/symbolic.hpp>
#include <zzref/zigzag_module.hpp>
