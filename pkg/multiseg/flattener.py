"""
Flattening of nested report records into single-level CSV rows.
"""
import json


class ReportFlattener(object):
    """
    Turns a nested record such as
    {'input': ..., 'result': {'checked': 3, ...}} into
    {'input': ..., 'result_checked': 3, ...}.

    Parameters:
        json_string_fields: keys whose values are written as JSON strings
            instead of being expanded
        list_fields: keys holding lists of records; `process_and_split`
            emits one row per list element
    """

    def __init__(self, json_string_fields=(), list_fields=()):
        self.json_string_fields = list(json_string_fields)
        self.list_fields = list(list_fields)

    def flatten_dict(self, d, json_string_fields=()):
        def expand(key, value):
            if key in json_string_fields:
                return [(key, json.dumps(value))]
            if isinstance(value, dict):
                return [(key + '_' + k, v) for k, v in self.flatten_dict(value, json_string_fields).items()]
            if isinstance(value, (list, tuple)):
                return [(key, json.dumps(value))]
            return [(key, value)]

        items = [item for k, v in d.items() for item in expand(k, v)]
        return dict(items)

    def process(self, rec):
        return self.flatten_dict(rec, self.json_string_fields)

    def process_and_split(self, rec):
        """
        One flat row per element of each list field, the remaining fields
        repeated on every row. A record without list elements gives one row.
        """
        base = {k: v for k, v in rec.items() if k not in self.list_fields}
        rows = []
        for field in self.list_fields:
            for idx, element in enumerate(rec.get(field) or []):
                row = dict(base)
                row['kind'] = field
                row['index'] = idx
                row['item'] = element
                rows.append(self.process(row))
        if not rows:
            rows.append(self.process(base))
        return rows
