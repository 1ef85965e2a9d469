#pragma once

#include "chromcert/bipartite_lll.hpp"
#include "chromcert/certificate.hpp"
#include "chromcert/choosability.hpp"
#include "chromcert/coloring.hpp"
#include "chromcert/exact.hpp"
#include "chromcert/graph.hpp"
#include "chromcert/graph6.hpp"
#include "chromcert/graph_enum.hpp"
#include "chromcert/interval.hpp"
#include "chromcert/kspec.hpp"
#include "chromcert/orientation.hpp"
#include "chromcert/property_p.hpp"
#include "chromcert/ratio_lab.hpp"
#include "chromcert/report.hpp"
#include "chromcert/rng.hpp"
#include "chromcert/sampling.hpp"
#include "chromcert/zoo.hpp"
