"""
relucert/domain/properties/registry.py - Property encoder registry

Factory Pattern Implementation:
- PropertyRegistry maps each PropertyKind to its encoder class
- register() adds encoders at runtime without touching callers
"""
from typing import Dict, List, Optional, Type, Union

from relucert.core.spec import PropertyKind
from relucert.domain.properties.base import PropertyEncoder
from relucert.domain.properties.global_confidence import GlobalConfidenceEncoder
from relucert.domain.properties.local_confidence import LocalConfidenceEncoder
from relucert.domain.properties.local_label import LocalLabelEncoder


class PropertyRegistry:
    """
    Central registry for all property encoders.
    Uses Factory Pattern to create encoder instances by kind.
    """

    _encoders: Dict[PropertyKind, Type[PropertyEncoder]] = {}

    @classmethod
    def register(cls, kind: Union[PropertyKind, str], encoder_class: Type[PropertyEncoder]) -> None:
        """
        Register an encoder class.

        Args:
            kind: Property kind it encodes (e.g. 'local-label')
            encoder_class: Encoder class (must extend PropertyEncoder)
        """
        if not issubclass(encoder_class, PropertyEncoder):
            raise TypeError(f"{encoder_class} must extend PropertyEncoder")
        cls._encoders[PropertyKind(kind)] = encoder_class

    @classmethod
    def get(cls, kind: Union[PropertyKind, str]) -> Optional[PropertyEncoder]:
        """
        Get an encoder instance by kind.

        Returns:
            Encoder instance or None if not registered
        """
        try:
            kind = PropertyKind(kind)
        except ValueError:
            return None
        if kind not in cls._encoders:
            return None
        return cls._encoders[kind]()

    @classmethod
    def all_kinds(cls) -> List[PropertyKind]:
        return list(cls._encoders.keys())

    @classmethod
    def metadata_all(cls) -> List[dict]:
        return [cls.get(kind).metadata() for kind in cls.all_kinds()]


def _register_default_encoders():
    PropertyRegistry.register(PropertyKind.LOCAL_LABEL, LocalLabelEncoder)
    PropertyRegistry.register(PropertyKind.LOCAL_CONFIDENCE, LocalConfidenceEncoder)
    PropertyRegistry.register(PropertyKind.GLOBAL_CONFIDENCE, GlobalConfidenceEncoder)


# Auto-register on module import
_register_default_encoders()
