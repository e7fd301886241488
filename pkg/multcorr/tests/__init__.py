import json
import os

import multcorr

SCHEMA_DIR = os.path.join(os.path.dirname(multcorr.__file__), 'schemas')


def _inline_refs(node):
    if isinstance(node, dict):
        if set(node) == {'$ref'}:
            return load_schema(node['$ref'])
        return dict((k, _inline_refs(v)) for k, v in node.items())
    if isinstance(node, list):
        return [_inline_refs(v) for v in node]
    return node


def load_schema(name):
    '''The schema <name> from multcorr/schemas with references to sibling
    files replaced by their contents, ready for <jsonschema.validate>.
    '''

    with open(os.path.join(SCHEMA_DIR, name)) as f:
        return _inline_refs(json.load(f))
