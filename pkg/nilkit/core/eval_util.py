"""
Common evaluation utilities.
"""

from collections import OrderedDict
from numbers import Number

import numpy as np


def create_stats_ordered_dict(
        name,
        data,
        stat_prefix=None,
        always_show_all_stats=True,
        exclude_max_min=False,
):
    if stat_prefix is not None:
        name = "{}{}".format(stat_prefix, name)
    if isinstance(data, Number):
        return OrderedDict({name: data})

    if len(data) == 0:
        return OrderedDict()

    if isinstance(data, tuple):
        ordered_dict = OrderedDict()
        for number, d in enumerate(data):
            sub_dict = create_stats_ordered_dict(
                "{0}_{1}".format(name, number),
                d,
            )
            ordered_dict.update(sub_dict)
        return ordered_dict

    # Fractions and other exact values are summarized as floats
    data = np.asarray([float(v) for v in np.ravel(np.asarray(data, dtype=object))])

    if data.size == 1 and not always_show_all_stats:
        return OrderedDict({name: float(data[0])})

    stats = OrderedDict([
        (name + ' Mean', np.mean(data)),
        (name + ' Std', np.std(data)),
    ])
    if not exclude_max_min:
        stats[name + ' Max'] = np.max(data)
        stats[name + ' Min'] = np.min(data)
    return stats


def get_battery_information(results, stat_prefix=''):
    """Statistics over a list of BatteryResult."""
    statistics = OrderedDict()
    statistics[stat_prefix + 'Num Batteries'] = len(results)
    statistics[stat_prefix + 'Num Trials'] = sum(r.trials for r in results)
    statistics[stat_prefix + 'Num Failures'] = sum(
        r.num_failures for r in results)
    statistics[stat_prefix + 'Num Refusals'] = sum(r.refusals for r in results)
    statistics.update(create_stats_ordered_dict(
        'Battery Seconds', [r.seconds for r in results],
        stat_prefix=stat_prefix,
    ))
    return statistics
